#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logkdv/band_operator.hpp"
#include "logkdv/banded_solver.hpp"
#include "logkdv/grid.hpp"

namespace logkdv::linevolve {

enum class InitialKind { odd, even, gaussian, kernel };

/// odd/even: the symplectically orthogonal polynomial-Gaussian data with
/// width parameter alpha; gaussian: v_G; kernel: v_G'.
Field make_initial_data(InitialKind kind, double alpha, const GridPtr& grid);

struct DiagnosticsRecord {
  double t = 0.0;
  double l2 = 0.0;
  double ec = 0.0;
  double xbar = 0.0;   // NaN when the field has zero mass
  double sigma = 0.0;  // NaN when the field has zero mass
  bool moments_defined = true;
};

DiagnosticsRecord diagnostics(const Field& u, const BandOperator& LD);

/// Strict interior local extrema of a sampled series.
int count_local_extrema(std::span<const double> series);

/// Discrete quadratic energy h/2 u^T L_D u.
double discrete_energy(std::span<const double> u, const BandOperator& LD, double h);

/// Trapezoidal (Cayley) step for u_t = D L_D u:
///   (I - dt/2 S) u_{m+1} = (I + dt/2 S) u_m,  S = D L_D.
class LinearStepper {
 public:
  LinearStepper(GridPtr grid, double dt);

  /// Advance one step in place. Throws SolverError if the linear solve
  /// cannot reach a relative residual below 1e-12.
  void step(std::vector<double>& u);

  double dt() const { return dt_; }
  const GridPtr& grid() const { return grid_; }
  const BandOperator& L() const { return LD_; }
  const BandOperator& S() const { return S_; }
  double last_residual() const { return last_residual_; }

 private:
  GridPtr grid_;
  double dt_;
  BandOperator LD_;
  BandOperator S_;
  BandOperator plus_;  // I + dt/2 S
  CyclicBandedSolver minus_;  // I - dt/2 S, factored
  std::vector<double> rhs_;
  double last_residual_ = 0.0;
};

struct Trajectory {
  std::vector<Field> snapshots;
  std::vector<DiagnosticsRecord> records;
  std::vector<std::string> warnings;
  double max_ec_step_drift = 0.0;  // max |dEc| / (1 + |Ec|) over all steps
  double max_residual = 0.0;
  double max_edge_amplitude = 0.0;  // max |u| over |x| >= 7L/8, every step
};

/// Integrate to t_final (a multiple of dt, 0 < dt <= 1e-2). Diagnostics are
/// recorded every `record_every` steps and at the end. Snapshots are taken at
/// every record, or only at `snapshot_times` (rounded to the nearest step)
/// when that list is not empty.
Trajectory evolve_linear(const Field& u0, double dt, double t_final, int record_every,
                         std::span<const double> snapshot_times = {});

}  // namespace logkdv::linevolve
