#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfgkp/decoder.hpp"
#include "tfgkp/loss.hpp"
#include "tfgkp/params.hpp"

// Plain-text experiment configuration (JSON). Parsing validates everything up
// front and reports every failure at once; unknown keys are rejected at every
// nesting level.

namespace tfgkp::cli {

struct CodewordSpec {
    int k = 0;
    std::string domain = "frequency";  // "frequency" | "time"
};

struct HomSpec {
    int k = 0;
    double tauMaxOverT0 = 4.0;
    long points = 200;
};

struct RotationSpec {
    std::vector<double> thetas = {0.05, 0.2, 0.5};
    std::vector<double> sigmas;  // defaults to omega0 * {0.5, 1, 2}
    std::size_t count = 4096;
};

struct LossSpec {
    LossScheme scheme = LossScheme::singleShot;
    std::vector<std::string> etas;  // "p/q" literals; empty = generated
};

struct GridOverride {
    std::size_t count = 16384;
    double span = 0.0;  // half-width; 0 = derived from params
};

struct ExperimentConfig {
    std::string experiment;
    bool hasSeed = false;
    std::uint64_t seed = 0;
    std::string output;  // empty = stdout
    CodeParams params;
    double sigmaG = 0.0;  // defaults to omega0
    GridOverride grid;
    long trials = 100000;
    SyndromeMode syndrome = SyndromeMode::sampled;
    NoiseModel noise;
    std::vector<double> deltas;  // error-rate scan; defaults to {params.delta}
    std::vector<long> ns = {1, 4, 16};
    CodewordSpec codeword;
    HomSpec hom;
    RotationSpec rotation;
    LossSpec loss;
};

// Throws ValidationError carrying every failure; syntax errors report
// line/column.
ExperimentConfig parse_config(const std::string& text);

// Canonical serialization of the effective (defaulted) config; the CSV
// metadata hash is computed over this string.
std::string effective_dump(const ExperimentConfig& config);

boost::rational<long> parse_rational(const std::string& text);

}  // namespace tfgkp::cli
