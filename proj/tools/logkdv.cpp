// Command-line front end: one subcommand per experiment, plus figure bundles.
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "logkdv/error.hpp"
#include "logkdv/xcli.hpp"

using logkdv::xcli::Command;
using logkdv::xcli::ExperimentConfig;

namespace {

void add_config_flags(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("-L,--half-width", c.L, "half width L of the periodic x box")->capture_default_str();
  sub->add_option("-n,--points", c.n, "x grid points")->capture_default_str();
  sub->add_option("--k-max", c.k_max, "truncation of the k half-line")->capture_default_str();
  sub->add_option("--n-k", c.n_k, "k grid points")->capture_default_str();
  sub->add_option("--dt", c.dt, "time step")->capture_default_str();
  sub->add_option("--t-final", c.t_final, "final time (multiple of dt)")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "initial data width parameter")->capture_default_str();
  sub->add_option("-c,--speed", c.c, "soliton parameter c")->capture_default_str();
  sub->add_option("-a,--shift", c.a, "soliton offset a")->capture_default_str();
  sub->add_option("--eps", c.eps, "regularization scale")->capture_default_str();
  sub->add_option("-m,--order", c.m, "regularization order (1 or 2)")->capture_default_str();
  sub->add_option("--n-modes", c.n_modes, "number of modes")->capture_default_str();
  sub->add_option("--record-every", c.record_every, "record cadence in steps")->capture_default_str();
  sub->add_option("--kind", c.kind, "initial data: odd|even|gaussian|kernel|soliton|perturbed")
      ->capture_default_str();
  sub->add_option("--branch", c.branch, "plus|minus")->capture_default_str();
  sub->add_option("--x-lo", c.x_lo, "first x target / fit window start")->capture_default_str();
  sub->add_option("--x-hi", c.x_hi, "last x target / fit window end")->capture_default_str();
  sub->add_option("--n-x", c.n_x, "number of x targets")->capture_default_str();
  sub->add_option("--eps-list", c.eps_list, "decreasing eps values")->capture_default_str();
  sub->add_option("-o,--output-dir", c.output_dir, "output directory")
      ->envname("LOGKDV_OUTPUT_DIR")
      ->capture_default_str();
}

int report(const logkdv::xcli::RunResult& r, const std::string& dir) {
  for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  if (r.status != 0) {
    std::fprintf(stderr, "error: %s\n", r.error.c_str());
    return 1;
  }
  for (const auto& f : r.files) std::printf("%s/%s\n", dir.c_str(), f.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logkdv: spectra, linear and regularized nonlinear flows around the Gaussian wave"};
  app.set_config("--config", "", "TOML/INI file; options of a subcommand go in a [subcommand] section");
  app.require_subcommand(1);

  struct Entry {
    Command cmd;
    CLI::App* sub;
    ExperimentConfig cfg;
  };
  std::vector<Entry> entries;
  const std::pair<Command, const char*> commands[] = {
      {Command::spectrum, "eigenvalues of the half-line problem"},
      {Command::modes, "eigenmodes on both sides of the transform (JSON)"},
      {Command::decay_fit, "algebraic decay exponents of the physical modes"},
      {Command::evolve_linear, "implicit linearized evolution with diagnostics"},
      {Command::evolve_nonlinear, "split-step regularized nonlinear evolution"},
      {Command::project, "modal coefficients of initial data"},
      {Command::eps_study, "eps -> 0 convergence experiment"},
  };
  entries.reserve(std::size(commands));
  for (const auto& [cmd, help] : commands) {
    entries.push_back({cmd, nullptr, logkdv::xcli::defaults(cmd)});
    Entry& e = entries.back();
    e.sub = app.add_subcommand(logkdv::xcli::to_string(cmd), help);
    add_config_flags(e.sub, e.cfg);
  }

  std::string figure, figure_dir = "out";
  auto* fig = app.add_subcommand("figure", "pre-registered bundle for fig1, fig2 or fig3");
  fig->add_option("name", figure, "fig1|fig2|fig3")->required();
  fig->add_option("-o,--output-dir", figure_dir, "output directory")
      ->envname("LOGKDV_OUTPUT_DIR")
      ->capture_default_str();

  std::string json_path;
  auto* from = app.add_subcommand("run", "run a JSON experiment config (the manifest format)");
  from->add_option("file", json_path, "JSON config")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (fig->parsed()) return report(logkdv::xcli::figure_bundle(figure, figure_dir), figure_dir + "/" + figure);
    if (from->parsed()) {
      std::ifstream in(json_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw logkdv::ConfigError("config", std::string("invalid JSON: ") + e.what());
      }
      const ExperimentConfig cfg = logkdv::xcli::from_json(j);
      return report(logkdv::xcli::run(cfg), cfg.output_dir);
    }
    for (const auto& e : entries)
      if (e.sub->parsed()) return report(logkdv::xcli::run(e.cfg), e.cfg.output_dir);
  } catch (const logkdv::ConfigError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
