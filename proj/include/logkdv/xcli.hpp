#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace logkdv::xcli {

enum class Command { spectrum, modes, decay_fit, evolve_linear, evolve_nonlinear, project, eps_study };

std::string to_string(Command c);
Command command_from_string(const std::string& s);  // ConfigError on unknown names

/// Bumped whenever a default below changes.
inline constexpr int kDefaultsVersion = 1;

struct ExperimentConfig {
  Command command = Command::spectrum;
  double L = 40.0;
  int n = 4096;
  double k_max = 12.0;
  int n_k = 4000;
  double dt = 1e-3;
  double t_final = 5.0;
  double alpha = 0.1;
  double c = 0.0;
  double a = 0.0;
  double eps = 1e-3;
  int m = 2;
  int n_modes = 3;
  int record_every = 10;
  std::string kind = "odd";     // initial data: odd, even, gaussian, kernel, soliton, perturbed
  std::string branch = "plus";  // plus, minus
  double x_lo = -20.0;          // physical-side targets / fit window
  double x_hi = 20.0;
  int n_x = 401;
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3};
  std::string output_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Pinned defaults for a command.
ExperimentConfig defaults(Command c);

/// Throws ConfigError naming the first offending field.
void validate(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Missing keys take the command's defaults; unknown keys are rejected.
ExperimentConfig from_json(const nlohmann::json& j);

struct RunResult {
  int status = 0;  // 0 ok, 1 downstream failure
  std::vector<std::string> files;  // relative to output_dir, manifest last
  std::vector<std::string> warnings;
  std::string error;
};

/// Validate, execute and write artifacts plus manifest.json into
/// cfg.output_dir. Invalid configs throw ConfigError before anything is
/// written; downstream failures remove partial outputs and report status 1.
RunResult run(const ExperimentConfig& cfg);

/// Pre-registered parameter sets: fig1 (eigenfunctions), fig2 (odd data,
/// alpha = 0.1), fig3 (even data, alpha = 0.25). Output goes to
/// output_dir/<name>.
RunResult figure_bundle(const std::string& name, const std::string& output_dir);

}  // namespace logkdv::xcli
