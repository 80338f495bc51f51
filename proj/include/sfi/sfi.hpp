#pragma once

// Umbrella header: the whole pipeline from price CSVs to visibility graphs,
// SF/SF_R series, crisis flags, and correlation threshold networks.

#include "sfi/csvio.hpp"
#include "sfi/date.hpp"
#include "sfi/errors.hpp"
#include "sfi/infotheory.hpp"
#include "sfi/ingest.hpp"
#include "sfi/netcorr.hpp"
#include "sfi/parallel.hpp"
#include "sfi/synth.hpp"
#include "sfi/visibility.hpp"
#include "sfi/windows.hpp"
