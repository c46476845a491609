#pragma once

// Everything: graphs, simulator, clustering, ruling sets, both constructions,
// verification and reports.

#include "cspan/exact.hpp"
#include "cspan/generators.hpp"
#include "cspan/graph.hpp"
#include "cspan/polylog.hpp"
#include "cspan/report.hpp"
#include "cspan/sparse.hpp"
#include "cspan/verify.hpp"
