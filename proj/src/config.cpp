#include "bounce/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bounce/errors.hpp"
#include "bounce/fft.hpp"

namespace bounce {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& scope) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key()))
      throw ConfigError("unknown config key: " + (scope.empty() ? it.key() : scope + "." + it.key()));
  }
}

double get_num(const json& j, const char* key, double fallback, const std::string& scope) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(scope + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback,
                      const std::string& scope) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned())
    throw ConfigError(scope + "." + key + " must be a non-negative integer");
  return v.get<std::size_t>();
}

bool get_bool(const json& j, const char* key, bool fallback, const std::string& scope) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError(scope + "." + key + " must be a boolean");
  return v.get<bool>();
}

}  // namespace

void RunConfig::validate() const {
  constants.validate();
  wavepacket.validate(constants);
  if (grid.n != 0) {
    if (grid.n < (1u << 10) || !detail::is_pow2(grid.n))
      throw ConfigError("grid.n must be 0 (auto) or a power of two >= 1024");
  }
  if (!(grid.halfwidth_sigmas >= 2.0))
    throw ConfigError("grid.halfwidth_sigmas must be >= 2");
  if (!(detector.offset_lo_m < detector.offset_hi_m))
    throw ConfigError("detector.offset_lo_m must be < detector.offset_hi_m");
  if (detector.n < 16) throw ConfigError("detector.n must be >= 16");
  if (!(momentum_out.v_min_mps < momentum_out.v_max_mps))
    throw ConfigError("momentum_out.v_min_mps must be < momentum_out.v_max_mps");
  if (momentum_out.n < 16) throw ConfigError("momentum_out.n must be >= 16");
  if (!(numerics.delta_g_rel > 0.0 && numerics.delta_g_rel < 1e-2))
    throw ConfigError("numerics.delta_g_rel must be in (0, 1e-2)");
  if (wavepacket.sigma_v > limits.sigma_v_max_mps)
    throw ConfigError("wavepacket.sigma_v_mps exceeds limits.sigma_v_max_mps (single-bounce bound)");
  if (wavepacket.z0 > limits.z0_max_m)
    throw ConfigError("wavepacket.z0_m exceeds limits.z0_max_m (quantum-reflection bound)");
  if (!(sweep.min < sweep.max)) throw ConfigError("sweep.min must be < sweep.max");
  if (sweep.n_points < 2) throw ConfigError("sweep.n_points must be >= 2");
  if (sweep.axis == SweepAxis::sigma_v && sweep.max > limits.sigma_v_max_mps)
    throw ConfigError("sweep.max exceeds limits.sigma_v_max_mps");
  if (sweep.axis == SweepAxis::z0 && sweep.max > limits.z0_max_m)
    throw ConfigError("sweep.max exceeds limits.z0_max_m");
  if ((sweep.axis == SweepAxis::T || sweep.axis == SweepAxis::z0) && !(sweep.min > 0.0))
    throw ConfigError("sweep.min must be > 0 for this axis");
  if (sweep.axis == SweepAxis::sigma_v && !(sweep.min > 0.0))
    throw ConfigError("sweep.min must be > 0 for sigma_v sweeps");
}

FisherNumerics RunConfig::fisher_numerics() const {
  FisherNumerics n = numerics;
  n.grid_n = grid.n;
  n.grid_halfwidth_sigmas = grid.halfwidth_sigmas;
  return n;
}

void apply_axis_defaults(SweepConfig& sweep) {
  switch (sweep.axis) {
    case SweepAxis::T:
      sweep.min = 0.1;
      sweep.max = 1.0;
      break;
    case SweepAxis::sigma_v:
      sweep.min = 0.02;
      sweep.max = 0.12;
      break;
    case SweepAxis::z0:
      // ten points step by 0.25 mm, so the 1 mm reference row is on the grid
      sweep.min = 2.5e-4;
      sweep.max = 2.5e-3;
      sweep.couple_v0 = true;
      break;
  }
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(j, {"constants", "wavepacket", "grid", "detector", "momentum_out", "numerics",
                     "limits", "sweep"},
                 "");

  RunConfig cfg;
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    reject_unknown(c, {"hbar", "mass", "g", "g0"}, "constants");
    cfg.constants.hbar = get_num(c, "hbar", cfg.constants.hbar, "constants");
    cfg.constants.m = get_num(c, "mass", cfg.constants.m, "constants");
    cfg.constants.g = get_num(c, "g", cfg.constants.g, "constants");
    cfg.constants.g0 = get_num(c, "g0", cfg.constants.g0, "constants");
  }
  if (j.contains("wavepacket")) {
    const auto& w = j.at("wavepacket");
    reject_unknown(w, {"z0_m", "v0_mps", "sigma_v_mps", "T_s", "n_events"}, "wavepacket");
    cfg.wavepacket.z0 = get_num(w, "z0_m", cfg.wavepacket.z0, "wavepacket");
    cfg.wavepacket.v0 = get_num(w, "v0_mps", cfg.wavepacket.v0, "wavepacket");
    cfg.wavepacket.sigma_v = get_num(w, "sigma_v_mps", cfg.wavepacket.sigma_v, "wavepacket");
    cfg.wavepacket.T = get_num(w, "T_s", cfg.wavepacket.T, "wavepacket");
    cfg.wavepacket.n_events = get_num(w, "n_events", cfg.wavepacket.n_events, "wavepacket");
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, {"n", "halfwidth_sigmas"}, "grid");
    cfg.grid.n = get_count(g, "n", cfg.grid.n, "grid");
    cfg.grid.halfwidth_sigmas = get_num(g, "halfwidth_sigmas", cfg.grid.halfwidth_sigmas, "grid");
  }
  if (j.contains("detector")) {
    const auto& d = j.at("detector");
    reject_unknown(d, {"offset_lo_m", "offset_hi_m", "n"}, "detector");
    cfg.detector.offset_lo_m = get_num(d, "offset_lo_m", cfg.detector.offset_lo_m, "detector");
    cfg.detector.offset_hi_m = get_num(d, "offset_hi_m", cfg.detector.offset_hi_m, "detector");
    cfg.detector.n = get_count(d, "n", cfg.detector.n, "detector");
  }
  if (j.contains("momentum_out")) {
    const auto& m = j.at("momentum_out");
    reject_unknown(m, {"v_min_mps", "v_max_mps", "n"}, "momentum_out");
    cfg.momentum_out.v_min_mps = get_num(m, "v_min_mps", cfg.momentum_out.v_min_mps, "momentum_out");
    cfg.momentum_out.v_max_mps = get_num(m, "v_max_mps", cfg.momentum_out.v_max_mps, "momentum_out");
    cfg.momentum_out.n = get_count(m, "n", cfg.momentum_out.n, "momentum_out");
  }
  if (j.contains("numerics")) {
    const auto& n = j.at("numerics");
    reject_unknown(n, {"delta_g_rel", "step_halving", "momentum_pad"}, "numerics");
    cfg.numerics.delta_g_rel = get_num(n, "delta_g_rel", cfg.numerics.delta_g_rel, "numerics");
    cfg.numerics.step_halving_check =
        get_bool(n, "step_halving", cfg.numerics.step_halving_check, "numerics");
    cfg.numerics.momentum_pad = get_count(n, "momentum_pad", cfg.numerics.momentum_pad, "numerics");
  }
  if (j.contains("limits")) {
    const auto& l = j.at("limits");
    reject_unknown(l, {"sigma_v_max_mps", "z0_max_m"}, "limits");
    cfg.limits.sigma_v_max_mps = get_num(l, "sigma_v_max_mps", cfg.limits.sigma_v_max_mps, "limits");
    cfg.limits.z0_max_m = get_num(l, "z0_max_m", cfg.limits.z0_max_m, "limits");
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    reject_unknown(s, {"axis", "min", "max", "n_points", "couple_v0", "include_ip"}, "sweep");
    if (s.contains("axis")) {
      const std::string a = s.at("axis").is_string() ? s.at("axis").get<std::string>() : "";
      if (a == "T")
        cfg.sweep.axis = SweepAxis::T;
      else if (a == "sigma_v")
        cfg.sweep.axis = SweepAxis::sigma_v;
      else if (a == "z0")
        cfg.sweep.axis = SweepAxis::z0;
      else
        throw ConfigError("sweep.axis must be one of \"T\", \"sigma_v\", \"z0\"");
      if (!s.contains("min") && !s.contains("max")) apply_axis_defaults(cfg.sweep);
    }
    cfg.sweep.explicit_range = s.contains("min") || s.contains("max");
    cfg.sweep.min = get_num(s, "min", cfg.sweep.min, "sweep");
    cfg.sweep.max = get_num(s, "max", cfg.sweep.max, "sweep");
    cfg.sweep.n_points = get_count(s, "n_points", cfg.sweep.n_points, "sweep");
    cfg.sweep.couple_v0 = get_bool(s, "couple_v0", cfg.sweep.couple_v0, "sweep");
    cfg.sweep.include_ip = get_bool(s, "include_ip", cfg.sweep.include_ip, "sweep");
  }

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["constants"] = {{"hbar", cfg.constants.hbar},
                    {"mass", cfg.constants.m},
                    {"g", cfg.constants.g},
                    {"g0", cfg.constants.g0}};
  j["wavepacket"] = {{"z0_m", cfg.wavepacket.z0},
                     {"v0_mps", cfg.wavepacket.v0},
                     {"sigma_v_mps", cfg.wavepacket.sigma_v},
                     {"T_s", cfg.wavepacket.T},
                     {"n_events", cfg.wavepacket.n_events}};
  j["grid"] = {{"n", cfg.grid.n}, {"halfwidth_sigmas", cfg.grid.halfwidth_sigmas}};
  j["detector"] = {{"offset_lo_m", cfg.detector.offset_lo_m},
                   {"offset_hi_m", cfg.detector.offset_hi_m},
                   {"n", cfg.detector.n}};
  j["momentum_out"] = {{"v_min_mps", cfg.momentum_out.v_min_mps},
                       {"v_max_mps", cfg.momentum_out.v_max_mps},
                       {"n", cfg.momentum_out.n}};
  j["numerics"] = {{"delta_g_rel", cfg.numerics.delta_g_rel},
                   {"step_halving", cfg.numerics.step_halving_check},
                   {"momentum_pad", cfg.numerics.momentum_pad}};
  j["limits"] = {{"sigma_v_max_mps", cfg.limits.sigma_v_max_mps},
                 {"z0_max_m", cfg.limits.z0_max_m}};
  const char* axis = cfg.sweep.axis == SweepAxis::T
                         ? "T"
                         : (cfg.sweep.axis == SweepAxis::sigma_v ? "sigma_v" : "z0");
  j["sweep"] = {{"axis", axis},          {"min", cfg.sweep.min},
                {"max", cfg.sweep.max},  {"n_points", cfg.sweep.n_points},
                {"couple_v0", cfg.sweep.couple_v0}, {"include_ip", cfg.sweep.include_ip}};
  return j.dump(2);
}

}  // namespace bounce
