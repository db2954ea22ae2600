// Command-line entry point.
//
// Usage: tfgkp <experiment> --config <file> [--seed N] [--out <file>]
//
// Exit codes:
//   0  success
//   2  invalid configuration or arguments
//   3  numerical failure (non-finite result)
//   4  I/O failure

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "cli/experiments.hpp"
#include "tfgkp/common.hpp"

namespace {

int fail_config(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-frequency GKP code simulator"};
  app.get_formatter()->column_width(28);

  std::string experiment;
  std::string configPath;
  std::string outPath;
  std::int64_t seed = 0;

  app.add_option("experiment", experiment,
                 "experiment to run (codeword, error-rate, scaling-scan, "
                 "loss-demo, rotation-scan, hom-scan)")
      ->required();
  app.add_option("--config", configPath, "JSON configuration file")
      ->required();
  auto* seedOpt =
      app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--out", outPath, "output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::ifstream in(configPath, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open config file: " << configPath << "\n";
    return 4;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    std::cerr << "error: cannot read config file: " << configPath << "\n";
    return 4;
  }

  tfgkp::cli::ExperimentConfig cfg;
  try {
    cfg = tfgkp::cli::parse_config(buffer.str());
  } catch (const tfgkp::ValidationError& e) {
    std::cerr << "invalid config: " << configPath << "\n";
    for (const auto& issue : e.issues) std::cerr << "  - " << issue << "\n";
    return 2;
  }

  if (experiment != cfg.experiment) {
    return fail_config("experiment argument '" + experiment +
                       "' does not match config experiment '" +
                       cfg.experiment + "'");
  }
  if (seedOpt->count() > 0) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.hasSeed = true;
  }
  if (!cfg.hasSeed) {
    return fail_config(
        "a seed is required: set \"seed\" in the config or pass --seed");
  }
  if (!outPath.empty()) cfg.output = outPath;

  const auto start = std::chrono::steady_clock::now();
  tfgkp::cli::ResultTable table;
  try {
    table = tfgkp::cli::run_experiment(cfg);
  } catch (const tfgkp::ValidationError& e) {
    std::cerr << "invalid config:\n";
    for (const auto& issue : e.issues) std::cerr << "  - " << issue << "\n";
    return 2;
  } catch (const tfgkp::DomainError& e) {
    return fail_config(e.what());
  } catch (const tfgkp::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }

  try {
    tfgkp::cli::emit_report(table, cfg.output);
  } catch (const tfgkp::IoError& e) {
    std::cerr << "I/O failure: " << e.what() << "\n";
    return 4;
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "elapsed: " << elapsed.count() << " ms\n";
  return 0;
}
