// Command-line pipeline: price CSVs -> visibility graphs -> SF scans,
// daily risk series, crisis flags, and cross-market threshold networks.
//
// Exit codes: 0 success, 1 data error, 2 usage or parameter error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <sfi/sfi.hpp>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

/// Regular files under `dir` whose name ends with `suffix`, sorted by name
/// so every run visits markets in the same order.
std::vector<fs::path> list_input_files(const fs::path& dir, const std::string& suffix) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            files.push_back(entry.path());
    }
    if (ec) throw sfi::IoError("cannot read directory " + dir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());
    return files;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw sfi::IoError("cannot write " + path.string());
    return out;
}

/// Errors raised while reading and validating raw input; these make the
/// whole run exit with a data error even though other markets continue.
bool is_ingest_error(const sfi::Error& e) {
    return dynamic_cast<const sfi::IoError*>(&e) || dynamic_cast<const sfi::MalformedRow*>(&e) ||
           dynamic_cast<const sfi::DuplicateDate*>(&e) ||
           dynamic_cast<const sfi::NonPositivePrice*>(&e) ||
           dynamic_cast<const sfi::WeekendDate*>(&e) || dynamic_cast<const sfi::EmptySeries*>(&e);
}

struct CommonOpts {
    std::string dataset;
    std::string out;
    int bins = 50;
    int jobs = int(std::thread::hardware_concurrency());
    sfi::ReturnMode returns = sfi::ReturnMode::Log;
    sfi::WeightMode weights = sfi::WeightMode::Signed;
};

void add_common_flags(CLI::App& cmd, CommonOpts& o) {
    cmd.add_option("--bins", o.bins, "Histogram bins for the weight distribution")
        ->capture_default_str()
        ->check(CLI::Range(2, 100000));
    cmd.add_option("--jobs", o.jobs, "Markets processed in parallel")
        ->capture_default_str()
        ->check(CLI::Range(1, 4096));
    cmd.add_option("--returns", o.returns, "Return definition")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, sfi::ReturnMode>{{"log", sfi::ReturnMode::Log},
                                                   {"simple", sfi::ReturnMode::Simple}}))
        ->default_str("log");
    cmd.add_option("--weights", o.weights, "Edge weight sign convention")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, sfi::WeightMode>{{"signed", sfi::WeightMode::Signed},
                                                   {"absolute", sfi::WeightMode::Absolute}}))
        ->default_str("signed");
}

/// Load -> calendar-align -> returns, the shared front of every command.
sfi::ReturnSeries load_returns(const fs::path& file, sfi::ReturnMode mode) {
    return sfi::compute_returns(sfi::align_to_calendar(sfi::load_price_csv(file)), mode);
}

struct MarketOutcome {
    std::string warning;
    bool data_error = false;
};

int finish_batch(const std::vector<MarketOutcome>& outcomes) {
    bool data_error = false;
    for (const MarketOutcome& o : outcomes) {
        if (!o.warning.empty()) std::cerr << o.warning << '\n';
        data_error = data_error || o.data_error;
    }
    return data_error ? kExitData : kExitOk;
}

// --- sf: windowed SF scan per market --------------------------------------

int run_sf(const CommonOpts& common, int window, int step) {
    const auto files = list_input_files(common.dataset, ".csv");
    if (files.empty()) {
        std::cerr << "no input files in " << common.dataset << '\n';
        return kExitData;
    }
    fs::create_directories(common.out);

    std::vector<std::optional<sfi::SFSeries>> results(files.size());
    std::vector<MarketOutcome> outcomes(files.size());
    sfi::parallel_for_index(files.size(), common.jobs, [&](std::size_t i) {
        sfi::ReturnSeries returns;
        try {
            returns = load_returns(files[i], common.returns);
        } catch (const sfi::Error& e) {
            outcomes[i] = {files[i].string() + ": " + e.what(), true};
            return;
        }
        try {
            auto series =
                sfi::sliding_sf(returns, window, step, common.bins, common.weights);
            auto out = open_output(fs::path(common.out) / (returns.market_id + ".sf.csv"));
            sfi::write_sf_series_csv(series, out);
            results[i] = std::move(series);
        } catch (const sfi::Error& e) {
            outcomes[i] = {files[i].string() + ": skipped: " + e.what(), false};
        }
    });

    std::vector<sfi::SFSeries> ok;
    for (auto& r : results) {
        if (r) ok.push_back(std::move(*r));
    }
    if (!ok.empty()) {
        auto out = open_output(fs::path(common.out) / "all.sf.csv");
        sfi::write_combined_sf_csv(ok, out);
    }
    return finish_batch(outcomes);
}

// --- risk: daily SF_R series and crisis report -----------------------------

int run_risk(const CommonOpts& common, int window, double level, int min_run) {
    const auto files = list_input_files(common.dataset, ".csv");
    if (files.empty()) {
        std::cerr << "no input files in " << common.dataset << '\n';
        return kExitData;
    }
    fs::create_directories(common.out);

    std::vector<std::vector<std::pair<std::string, sfi::CrisisPeriod>>> flagged(files.size());
    std::vector<MarketOutcome> outcomes(files.size());
    sfi::parallel_for_index(files.size(), common.jobs, [&](std::size_t i) {
        sfi::ReturnSeries returns;
        try {
            returns = load_returns(files[i], common.returns);
        } catch (const sfi::Error& e) {
            outcomes[i] = {files[i].string() + ": " + e.what(), true};
            return;
        }
        try {
            const auto risk = sfi::sf_risk_series(returns, window, common.bins, common.weights);
            auto out = open_output(fs::path(common.out) / (returns.market_id + ".sfr.csv"));
            sfi::write_risk_series_csv(risk, out);
            for (const sfi::CrisisPeriod& c : sfi::flag_crises(risk, level, min_run))
                flagged[i].emplace_back(returns.market_id, c);
        } catch (const sfi::Error& e) {
            outcomes[i] = {files[i].string() + ": skipped: " + e.what(), false};
        }
    });

    std::vector<std::pair<std::string, sfi::CrisisPeriod>> all;
    for (auto& f : flagged) all.insert(all.end(), f.begin(), f.end());
    auto out = open_output(fs::path(common.out) / "crises.csv");
    sfi::write_combined_crises_csv(all, out);
    return finish_batch(outcomes);
}

// --- network: correlation threshold networks over risk curves ---------------

int run_network(const std::string& risk_dir, const std::string& out_dir,
                const std::vector<double>& thresholds, bool pairwise, const std::string& curves) {
    for (const double tau : thresholds) {
        if (!(tau >= -1.0 && tau <= 1.0)) {
            std::cerr << "--thresholds values must lie in [-1, 1], got "
                      << sfi::format_double(tau) << '\n';
            return kExitUsage;
        }
    }
    const std::string suffix = curves == "sf" ? ".sf.csv" : ".sfr.csv";
    const auto files = list_input_files(risk_dir, suffix);
    if (files.size() < 2) {
        std::cerr << "need at least two markets (" << files.size() << " " << suffix
                  << " file(s) in " << risk_dir << ")\n";
        return kExitUsage;
    }

    std::vector<sfi::RiskSeries> series;
    series.reserve(files.size());
    for (const fs::path& f : files) {
        std::string market = f.filename().string();
        market.resize(market.size() - suffix.size());
        std::ifstream in(f);
        if (!in) throw sfi::IoError("cannot open " + f.string());
        if (curves == "sf") {
            // Correlate windowed SF curves instead of daily risk curves.
            const sfi::SFSeries sf = sfi::parse_sf_series_csv(in, market);
            sfi::RiskSeries as_risk;
            as_risk.market_id = sf.market_id;
            as_risk.dates = sf.dates;
            for (const auto& v : sf.values)
                as_risk.sfr.emplace_back(v ? std::optional<double>(v->sf) : std::nullopt);
            series.push_back(std::move(as_risk));
        } else {
            series.push_back(sfi::parse_risk_series_csv(in, market));
        }
    }

    const auto matrix = sfi::correlation_matrix(
        series, pairwise ? sfi::SupportMode::Pairwise : sfi::SupportMode::Common);
    fs::create_directories(out_dir);
    {
        auto out = open_output(fs::path(out_dir) / "corr.csv");
        sfi::write_matrix_csv(matrix, out);
    }
    for (const double tau : thresholds) {
        const auto net = sfi::threshold_network(matrix, tau);
        const std::string stem = "net_" + sfi::format_double(tau);
        auto dot = open_output(fs::path(out_dir) / (stem + ".dot"));
        sfi::write_network_dot(net, dot);
        auto json = open_output(fs::path(out_dir) / (stem + ".json"));
        sfi::write_network_json(net, json);
        auto csv = open_output(fs::path(out_dir) / (stem + ".csv"));
        sfi::write_network_edge_csv(net, csv);
    }
    return kExitOk;
}

// --- synth: deterministic synthetic price series -----------------------------

int run_synth(const sfi::SynthConfig& cfg, const std::string& out_file) {
    sfi::SynthConfig named = cfg;
    named.market_id = fs::path(out_file).stem().string();
    const sfi::PriceSeries prices = sfi::synth_prices(named);
    auto out = open_output(out_file);
    sfi::write_price_csv(prices, out);
    return kExitOk;
}

// --- graph: visibility-graph debug dump for one market ------------------------

int run_graph(const std::string& file, const std::string& out_dir, sfi::ReturnMode rmode,
              sfi::WeightMode wmode) {
    const sfi::ReturnSeries returns = load_returns(file, rmode);
    const auto graph = sfi::build_vg_fast(returns.values, wmode);
    fs::create_directories(out_dir);
    auto dot = open_output(fs::path(out_dir) / (returns.market_id + ".dot"));
    sfi::write_vg_dot(graph, dot);
    auto csv = open_output(fs::path(out_dir) / (returns.market_id + ".edges.csv"));
    sfi::write_vg_edge_csv(graph, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visibility-graph instability analytics for daily price series"};
    app.require_subcommand(1);

    // sf
    CommonOpts sf_opts;
    int sf_window = 504, sf_step = 63;
    CLI::App* sf = app.add_subcommand("sf", "Windowed SF scan over a dataset directory");
    sf->add_option("dataset", sf_opts.dataset, "Directory of price CSVs")->required();
    sf->add_option("-o,--out", sf_opts.out, "Output directory")->required();
    sf->add_option("--window", sf_window, "Window length in trading days")
        ->capture_default_str()
        ->check(CLI::Range(4, 1 << 24));
    sf->add_option("--step", sf_step, "Offset between consecutive windows")
        ->capture_default_str()
        ->check(CLI::Range(1, 1 << 24));
    add_common_flags(*sf, sf_opts);

    // risk
    CommonOpts risk_opts;
    int risk_window = 252, min_run = 5;
    double level = 1.0;
    CLI::App* risk = app.add_subcommand("risk", "Daily SF_R risk series and crisis report");
    risk->add_option("dataset", risk_opts.dataset, "Directory of price CSVs")->required();
    risk->add_option("-o,--out", risk_opts.out, "Output directory")->required();
    risk->add_option("--window", risk_window, "Trailing window in trading days")
        ->capture_default_str()
        ->check(CLI::Range(4, 1 << 24));
    risk->add_option("--level", level, "Crisis flag level on SF_R")->capture_default_str();
    risk->add_option("--min-run", min_run, "Minimum consecutive days above level")
        ->capture_default_str()
        ->check(CLI::Range(1, 1 << 24));
    add_common_flags(*risk, risk_opts);

    // network
    std::string net_dir, net_out, curves = "sfr";
    std::vector<double> thresholds{0.8, 0.9};
    bool pairwise = false;
    CLI::App* network =
        app.add_subcommand("network", "Correlation threshold networks over risk curves");
    network->add_option("riskdir", net_dir, "Directory of .sfr.csv files")->required();
    network->add_option("-o,--out", net_out, "Output directory")->required();
    network->add_option("--thresholds", thresholds, "Comma-separated correlation thresholds")
        ->delimiter(',')
        ->capture_default_str();
    network->add_flag("--pairwise", pairwise, "Correlate over per-pair date overlaps");
    network->add_option("--curves", curves, "Curve family to correlate")
        ->check(CLI::IsMember({"sfr", "sf"}))
        ->capture_default_str();

    // synth
    sfi::SynthConfig synth_cfg;
    std::string synth_out, scenario = "gaussian";
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic daily price CSV");
    synth->add_option("-o,--out", synth_out, "Output CSV file")->required();
    synth->add_option("--scenario", scenario, "Price scenario")
        ->check(CLI::IsMember({"gaussian", "burst", "trend"}))
        ->capture_default_str();
    synth->add_option("--length", synth_cfg.length, "Number of daily closes")
        ->capture_default_str()
        ->check(CLI::Range(600, 1 << 24));
    synth->add_option("--seed", synth_cfg.seed, "Random seed")->capture_default_str();

    // graph
    std::string graph_file, graph_out;
    sfi::ReturnMode graph_returns = sfi::ReturnMode::Log;
    sfi::WeightMode graph_weights = sfi::WeightMode::Signed;
    CLI::App* graph = app.add_subcommand("graph", "Dump the visibility graph of one market");
    graph->add_option("file", graph_file, "Price CSV for a single market")->required();
    graph->add_option("-o,--out", graph_out, "Output directory")->required();
    graph->add_option("--returns", graph_returns, "Return definition")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, sfi::ReturnMode>{{"log", sfi::ReturnMode::Log},
                                                   {"simple", sfi::ReturnMode::Simple}}))
        ->default_str("log");
    graph->add_option("--weights", graph_weights, "Edge weight sign convention")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, sfi::WeightMode>{{"signed", sfi::WeightMode::Signed},
                                                   {"absolute", sfi::WeightMode::Absolute}}))
        ->default_str("signed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sf->parsed()) return run_sf(sf_opts, sf_window, sf_step);
        if (risk->parsed()) return run_risk(risk_opts, risk_window, level, min_run);
        if (network->parsed()) return run_network(net_dir, net_out, thresholds, pairwise, curves);
        if (synth->parsed()) {
            if (scenario == "burst") synth_cfg.scenario = sfi::Scenario::Burst;
            else if (scenario == "trend") synth_cfg.scenario = sfi::Scenario::Trend;
            else synth_cfg.scenario = sfi::Scenario::Gaussian;
            return run_synth(synth_cfg, synth_out);
        }
        if (graph->parsed()) return run_graph(graph_file, graph_out, graph_returns, graph_weights);
    } catch (const sfi::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
