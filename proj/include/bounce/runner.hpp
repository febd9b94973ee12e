#pragma once

#include <string>

#include "bounce/config.hpp"

namespace bounce {

// Library-level subcommand implementations.  All emit deterministic text
// (12-significant-digit floats, LF line endings); the CLI routes the result
// to stdout or --out.

// CSV: Z_m,prob_density_exact,prob_density_farfield,prob_density_model
std::string run_pattern(const RunConfig& cfg);

// CSV: v1_mps,prob_density,prob_density_model
std::string run_momentum(const RunConfig& cfg);

// Same schema as run_pattern with the pipeline columns left empty; the
// analytic model only, so it runs without the FFT pipeline.
std::string run_model(const RunConfig& cfg);

// JSON FisherReport.
std::string run_fisher(const RunConfig& cfg);

// CSV: value,sqrt_i_z,sqrt_i_s,sqrt_i_p,cr_relative,status.  Points that
// fail numerics are marked failed and the sweep continues.
std::string run_sweep(const RunConfig& cfg, unsigned threads = 1);

}  // namespace bounce
