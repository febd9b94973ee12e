// Command-line front end for the single-bounce gravimeter pipeline.
//
// Exit codes: 0 success, 2 config error, 3 numerics error, 4 model-validity
// error, 1 anything else.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bounce/errors.hpp"
#include "bounce/runner.hpp"
#include "bounce/semiclassical.hpp"

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("AIRY_BOUNCE_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw bounce::ConfigError("cannot open output file: " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-bounce quantum gravimeter simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  std::string config_path;
  std::string out_path;
  unsigned threads = default_threads();
  std::string axis_override;

  app.add_option("--config", config_path, "JSON configuration file (defaults when omitted)");
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--threads", threads, "sweep worker threads (or AIRY_BOUNCE_THREADS)");
  app.add_option("--axis", axis_override, "sweep axis override: T, sigma_v or z0");

  auto* cmd_pattern = app.add_subcommand("pattern", "detector pattern CSV (exact, far-field, model)");
  auto* cmd_momentum = app.add_subcommand("momentum", "image-wave velocity distribution CSV");
  auto* cmd_model = app.add_subcommand("model", "analytic pattern model CSV (no pipeline)");
  auto* cmd_fisher = app.add_subcommand("fisher", "Fisher information report as JSON");
  auto* cmd_sweep = app.add_subcommand("sweep", "Fisher sweep CSV over T, sigma_v or z0");

  CLI11_PARSE(app, argc, argv);

  try {
    bounce::RunConfig cfg =
        config_path.empty() ? bounce::parse_config("{}") : bounce::load_config(config_path);
    if (!axis_override.empty()) {
      if (axis_override == "T")
        cfg.sweep.axis = bounce::SweepAxis::T;
      else if (axis_override == "sigma_v")
        cfg.sweep.axis = bounce::SweepAxis::sigma_v;
      else if (axis_override == "z0")
        cfg.sweep.axis = bounce::SweepAxis::z0;
      else
        throw bounce::ConfigError("--axis must be T, sigma_v or z0");
      if (!cfg.sweep.explicit_range) bounce::apply_axis_defaults(cfg.sweep);
      cfg.validate();
    }

    const double gamma =
        bounce::semiclassical::gamma_fringe(cfg.wavepacket.sigma_v, cfg.constants);
    if (gamma < bounce::semiclassical::kGammaWarn)
      std::cerr << "warning: gamma = " << gamma
                << " fringes; the uniform Airy model degrades below "
                << bounce::semiclassical::kGammaWarn << "\n";

    if (cmd_pattern->parsed()) emit(bounce::run_pattern(cfg), out_path);
    if (cmd_momentum->parsed()) emit(bounce::run_momentum(cfg), out_path);
    if (cmd_model->parsed()) emit(bounce::run_model(cfg), out_path);
    if (cmd_fisher->parsed()) emit(bounce::run_fisher(cfg), out_path);
    if (cmd_sweep->parsed()) emit(bounce::run_sweep(cfg, threads), out_path);
    return 0;
  } catch (const bounce::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bounce::NumericsError& e) {
    std::cerr << "numerics error: " << e.what() << "\n";
    return 3;
  } catch (const bounce::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
