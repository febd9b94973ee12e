#pragma once

#include <cstddef>
#include <string>

#include "bounce/constants.hpp"
#include "bounce/energy_rep.hpp"
#include "bounce/fisher.hpp"

namespace bounce {

enum class SweepAxis { T, sigma_v, z0 };

struct SweepConfig {
  SweepAxis axis = SweepAxis::T;
  double min = 0.1;
  double max = 1.0;
  std::size_t n_points = 10;
  bool couple_v0 = false;   // z0 sweeps: set v0 = optimal_v0(z0)
  bool include_ip = false;  // also fill the sqrt_i_p column
  bool explicit_range = false;  // min/max came from the config file
};

// Range bracketing the reference point of the given axis; z0 sweeps couple
// the launch velocity by default.
void apply_axis_defaults(SweepConfig& sweep);

// Default window holds all but ~1e-4 of the arriving probability: the
// up-moving tail of the source splashes well above the fringe region.
struct DetectorConfig {
  double offset_lo_m = -0.02;  // window edges relative to Z_c
  double offset_hi_m = 0.14;
  std::size_t n = 16384;
};

struct MomentumOutConfig {
  double v_min_mps = 0.05;
  double v_max_mps = 0.60;
  std::size_t n = 4096;
};

// Physical bounds the single-bounce treatment relies on; plain configured
// limits, not computed.
struct Limits {
  double sigma_v_max_mps = 0.120;  // one and only one bounce
  double z0_max_m = 5.0e-3;        // quantum-reflection losses stay small
};

struct GridConfig {
  std::size_t n = 0;  // 0 = auto
  double halfwidth_sigmas = 10.0;
};

struct RunConfig {
  PhysicalConstants constants;
  WavepacketParams wavepacket;
  GridConfig grid;
  DetectorConfig detector;
  MomentumOutConfig momentum_out;
  FisherNumerics numerics;
  Limits limits;
  SweepConfig sweep;

  void validate() const;  // throws ConfigError with the offending key path
  FisherNumerics fisher_numerics() const;
};

// Load + validate a JSON config; {} or a missing optional key means the
// documented default.  Unknown keys are rejected.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);
std::string dump_config(const RunConfig& cfg);

}  // namespace bounce
