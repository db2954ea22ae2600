#pragma once

#include "config.hpp"
#include "csv.hpp"

namespace tfgkp::cli {

// Dispatches to the configured experiment. Identical config + seed produces a
// byte-identical table; domain errors are rethrown with experiment context.
ResultTable run_experiment(const ExperimentConfig& config);

}  // namespace tfgkp::cli
