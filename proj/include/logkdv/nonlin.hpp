#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logkdv/grid.hpp"

namespace logkdv::nonlin {

/// v log|v| with the singular core |v| < eps replaced by an odd polynomial
/// matching it to order m at |v| = eps.
struct RegularizedNonlinearity {
  double eps = 1e-3;
  int m = 2;

  RegularizedNonlinearity() = default;
  RegularizedNonlinearity(double eps, int m);
};

double f_log(double v);  // v log|v|, 0 at v = 0
double W_log(double v);  // v^2 log|v| / 2 - v^2 / 4, 0 at v = 0

double p_eps(double v, const RegularizedNonlinearity& reg);
double f_eps(double v, const RegularizedNonlinearity& reg);
double df_eps(double v, const RegularizedNonlinearity& reg);
/// Antiderivative of f_eps from 0: termwise on the core, W + C_m eps^2 outside.
double W_eps(double v, const RegularizedNonlinearity& reg);
/// C_1 = 1/8, C_2 = 1/12.
double regularization_constant(int m);

struct FunctionalsRecord {
  double t = 0.0;
  double P = 0.0;      // ||v||^2 / 2
  double E_eps = 0.0;  // NaN when no regularization is given
  double E_log = 0.0;
  double h1 = 0.0;
};

FunctionalsRecord functionals(const Field& v,
                              const std::optional<RegularizedNonlinearity>& reg = std::nullopt);

/// e^c v_G(x - a) at t = 0. Appends a warning when the wave would come
/// within L/2 of the boundary before t_horizon.
Field soliton(double c, double a, const GridPtr& grid, double t_horizon = 0.0,
              std::vector<std::string>* warnings = nullptr);

/// Strang splitting for v_t + v_xxx + (f_eps(v))_x = 0 on the periodic grid:
/// exact Fourier half-step of the dispersive part, an explicit midpoint step
/// of the nonlinear transport with a spectral derivative, another half-step.
class SplitStepSolver {
 public:
  SplitStepSolver(GridPtr grid, RegularizedNonlinearity reg, double dt);
  ~SplitStepSolver();
  SplitStepSolver(const SplitStepSolver&) = delete;
  SplitStepSolver& operator=(const SplitStepSolver&) = delete;

  void step(std::vector<double>& v);
  /// exp(i k^3 tau) applied in Fourier space.
  void linear_flow(std::vector<double>& v, double tau);
  /// Spectral d/dx.
  std::vector<double> derivative(std::span<const double> v);

  /// Largest relative change of ||v|| seen across a linear half-step.
  double max_linear_norm_defect() const { return max_norm_defect_; }
  double dt() const { return dt_; }

 private:
  struct Plans;
  std::vector<double> nonlinear_rhs(std::span<const double> v);

  GridPtr grid_;
  RegularizedNonlinearity reg_;
  double dt_;
  std::vector<double> k_;  // angular wavenumbers of the r2c half spectrum
  std::unique_ptr<Plans> plans_;
  double max_norm_defect_ = 0.0;
};

struct NonlinearTrajectory {
  std::vector<Field> snapshots;
  std::vector<FunctionalsRecord> records;
  std::vector<std::string> warnings;
  double max_linear_norm_defect = 0.0;
};

NonlinearTrajectory evolve_nonlinear(const Field& v0, const RegularizedNonlinearity& reg, double dt,
                                     double t_final, int record_every = 100,
                                     std::span<const double> snapshot_times = {});

struct EpsReport {
  std::vector<double> eps;
  std::vector<Field> finals;                   // empty Field for failed runs
  std::vector<std::vector<double>> distance;   // ||v_i - v_j||_2 of final states
  std::vector<double> P_drift;                 // max_t |P - P0| / P0
  std::vector<double> E_drift;                 // max_t |E - E0| / |E0|
  std::vector<std::string> errors;             // empty when the run succeeded
};

EpsReport eps_convergence(const Field& v0, std::span<const double> eps_list, double dt,
                          double t_final, int m = 2);

}  // namespace logkdv::nonlin
