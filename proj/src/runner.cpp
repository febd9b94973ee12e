#include "bounce/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bounce/errors.hpp"
#include "bounce/fisher.hpp"
#include "bounce/propagation.hpp"
#include "bounce/semiclassical.hpp"

namespace bounce {

namespace {

namespace sc = bounce::semiclassical;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct PatternData {
  std::vector<double> z;
  std::vector<double> exact;
  std::vector<double> farfield;
  std::vector<double> model;
};

PatternData compute_pattern(const RunConfig& cfg) {
  const PhysicalConstants& C = cfg.constants;
  const WavepacketParams& P = cfg.wavepacket;
  const auto bp = sc::branchpoint(P.z0, P.T, C.g);
  const double span = cfg.detector.offset_hi_m - cfg.detector.offset_lo_m;
  const double z_lo = bp.Z_c + cfg.detector.offset_lo_m;

  const EnergyGrid grid = default_energy_grid(P, C, cfg.grid.n, cfg.grid.halfwidth_sigmas);
  const EnergyAmplitude c0 = initial_amplitude(P, C, grid);
  const EnergyAmplitude c1 = apply_bounce(c0, C);

  // rows are uniform pixels of `stride` fine samples each; averaging inside
  // the pixel keeps the column integrable (the two-path overlap region
  // carries micron-scale beats that pointwise decimation would alias)
  const std::size_t rows = cfg.detector.n;
  const double dz_fine = grid.de() / (C.m * C.g);
  const std::size_t stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(span / (dz_fine * static_cast<double>(rows)))));
  const ZWindow window{z_lo, z_lo + dz_fine * static_cast<double>(stride * rows + 2)};

  const std::size_t pad = recommended_pad(c1, C, P.T, window.hi - window.lo);
  const GriddedWavefunction psi_p = image_momentum(c1, C, pad);
  const GriddedWavefunction psi = propagate_to_detector(psi_p, P.T, C, window);

  PatternData out;
  out.z.resize(rows);
  out.exact.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t j0 = r * stride;
    double acc = 0.0;
    for (std::size_t j = j0; j < j0 + stride; ++j) acc += std::norm(psi.values[j]);
    out.exact[r] = acc / static_cast<double>(stride);
    out.z[r] = psi.x0 + psi.dx * (static_cast<double>(j0) +
                                  0.5 * static_cast<double>(stride - 1));
  }
  out.farfield = farfield_pattern(psi_p, P.T, P.z0, out.z, C);
  const sc::PatternModel model(P.z0, P.T, P.sigma_v, C);
  out.model.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double a = model.amplitude(out.z[r]);
    out.model[r] = a * a;
  }
  return out;
}

struct SweepRow {
  double value = 0.0;
  double sqrt_i_z = 0.0;
  double sqrt_i_s = 0.0;
  double sqrt_i_p = 0.0;
  double cr_relative = 0.0;
  bool has_ip = false;
  bool failed = false;
};

}  // namespace

std::string run_pattern(const RunConfig& cfg) {
  cfg.validate();
  const PatternData d = compute_pattern(cfg);
  std::ostringstream os;
  os << "Z_m,prob_density_exact,prob_density_farfield,prob_density_model\n";
  for (std::size_t r = 0; r < d.z.size(); ++r)
    os << fmt(d.z[r]) << ',' << fmt(d.exact[r]) << ',' << fmt(d.farfield[r]) << ','
       << fmt(d.model[r]) << '\n';
  return os.str();
}

std::string run_momentum(const RunConfig& cfg) {
  cfg.validate();
  const PhysicalConstants& C = cfg.constants;
  const WavepacketParams& P = cfg.wavepacket;
  const EnergyGrid grid = default_energy_grid(P, C, cfg.grid.n, cfg.grid.halfwidth_sigmas);
  const EnergyAmplitude c0 = initial_amplitude(P, C, grid);
  const EnergyAmplitude c1 = apply_bounce(c0, C);
  const GriddedWavefunction psi_p = image_momentum(c1, C);

  const sc::FarfieldModel model(P.z0, P.sigma_v, C);
  std::ostringstream os;
  os << "v1_mps,prob_density,prob_density_model\n";
  const std::size_t rows = cfg.momentum_out.n;
  for (std::size_t r = 0; r < rows; ++r) {
    const double v_req = cfg.momentum_out.v_min_mps +
                         (cfg.momentum_out.v_max_mps - cfg.momentum_out.v_min_mps) *
                             static_cast<double>(r) / static_cast<double>(rows - 1);
    const double u = (v_req * C.m - psi_p.x0) / psi_p.dx;
    if (u < 0.0 || u > static_cast<double>(psi_p.n() - 1))
      throw ConfigError("momentum_out window outside the computed momentum grid");
    const std::size_t j = static_cast<std::size_t>(std::llround(u));
    const double v = psi_p.x(j) / C.m;  // snapped to the grid
    const double dens_v = std::norm(psi_p.values[j]) * C.m;
    const double a = model.amplitude(std::max(v, 1e-12));
    os << fmt(v) << ',' << fmt(dens_v) << ',' << fmt(a * a) << '\n';
  }
  return os.str();
}

std::string run_model(const RunConfig& cfg) {
  cfg.validate();
  const PhysicalConstants& C = cfg.constants;
  const WavepacketParams& P = cfg.wavepacket;
  const auto bp = sc::branchpoint(P.z0, P.T, C.g);
  const sc::PatternModel model(P.z0, P.T, P.sigma_v, C);
  std::ostringstream os;
  os << "Z_m,prob_density_exact,prob_density_farfield,prob_density_model\n";
  for (std::size_t r = 0; r < cfg.detector.n; ++r) {
    const double Z = bp.Z_c + cfg.detector.offset_lo_m +
                     (cfg.detector.offset_hi_m - cfg.detector.offset_lo_m) *
                         static_cast<double>(r) / static_cast<double>(cfg.detector.n - 1);
    const double a = model.amplitude(Z);
    os << fmt(Z) << ",,," << fmt(a * a) << '\n';
  }
  return os.str();
}

std::string run_fisher(const RunConfig& cfg) {
  cfg.validate();
  const FisherReport r =
      fisher_report(cfg.wavepacket, cfg.constants, cfg.fisher_numerics(), true);
  nlohmann::ordered_json j;
  j["i_z"] = r.i_z;
  j["i_p"] = r.i_p;
  j["i_s"] = r.i_s;
  j["cr_relative"] = r.cr_relative;
  j["n_events"] = r.n_events;
  j["numerics"] = {{"delta_g_rel", r.delta_g_rel}, {"grid_n", r.grid_n}};
  return j.dump(2) + "\n";
}

std::string run_sweep(const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::size_t n = cfg.sweep.n_points;
  std::vector<SweepRow> rows(n);

  auto point_params = [&](std::size_t i) {
    WavepacketParams p = cfg.wavepacket;
    const double v = cfg.sweep.min + (cfg.sweep.max - cfg.sweep.min) * static_cast<double>(i) /
                                         static_cast<double>(n - 1);
    switch (cfg.sweep.axis) {
      case SweepAxis::T: p.T = v; break;
      case SweepAxis::sigma_v: p.sigma_v = v; break;
      case SweepAxis::z0:
        p.z0 = v;
        if (cfg.sweep.couple_v0) p.v0 = sc::optimal_v0(v, cfg.constants.g);
        break;
    }
    return std::pair<double, WavepacketParams>(v, p);
  };

  auto work = [&](std::size_t i) {
    auto [v, p] = point_params(i);
    SweepRow row;
    row.value = v;
    row.has_ip = cfg.sweep.include_ip;
    try {
      row.sqrt_i_s = std::sqrt(fisher_simple(p, cfg.constants));
      const double iz = fisher_position(p, cfg.constants, cfg.fisher_numerics());
      row.sqrt_i_z = std::sqrt(iz);
      row.cr_relative = cramer_rao(iz, p.n_events);
      if (cfg.sweep.include_ip)
        row.sqrt_i_p = std::sqrt(fisher_momentum(p, cfg.constants, cfg.fisher_numerics()));
    } catch (const NumericsError&) {
      row.failed = true;
    } catch (const ModelError&) {
      row.failed = true;
    }
    rows[i] = row;
  };

  const unsigned nw = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (nw <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned t = 0; t < nw; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
      });
    for (auto& th : pool) th.join();
  }

  std::ostringstream os;
  os << "value,sqrt_i_z,sqrt_i_s,sqrt_i_p,cr_relative,status\n";
  for (const SweepRow& r : rows) {
    os << fmt(r.value) << ',';
    if (r.failed) {
      os << ',' << fmt(r.sqrt_i_s) << ",,,failed\n";
    } else {
      os << fmt(r.sqrt_i_z) << ',' << fmt(r.sqrt_i_s) << ','
         << (r.has_ip ? fmt(r.sqrt_i_p) : std::string()) << ',' << fmt(r.cr_relative)
         << ",ok\n";
    }
  }
  return os.str();
}

}  // namespace bounce
