#include "logkdv/linevolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "logkdv/error.hpp"
#include "logkdv/numgrid.hpp"

namespace logkdv::linevolve {

Field make_initial_data(InitialKind kind, double alpha, const GridPtr& grid) {
  if (!grid->is_periodic()) throw InvalidGridError("initial data needs a periodic_x grid");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be finite and >= 0");
  const double q = (1.0 + alpha) * (1.0 + 2.0 * alpha);
  const double width = 0.25 * (1.0 + 2.0 * alpha);
  std::vector<double> v(static_cast<std::size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j) {
    const double x = (*grid)[j];
    double u = 0.0;
    switch (kind) {
      case InitialKind::odd:
        u = x * (x * x - (5.0 + 6.0 * alpha) / q) * std::exp(-width * x * x);
        break;
      case InitialKind::even:
        u = (x * x * x * x - 3.0 * (3.0 + 4.0 * alpha) / q * x * x + 6.0 / q) *
            std::exp(-width * x * x);
        break;
      case InitialKind::gaussian:
        u = gaussian::value(x);
        break;
      case InitialKind::kernel:
        u = gaussian::derivative(x);
        break;
    }
    v[static_cast<std::size_t>(j)] = u;
  }
  return Field(grid, std::move(v));
}

double discrete_energy(std::span<const double> u, const BandOperator& LD, double h) {
  const std::vector<double> lu = LD.apply(u);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * lu[i];
  return 0.5 * h * s;
}

DiagnosticsRecord diagnostics(const Field& u, const BandOperator& LD) {
  const Grid& g = *u.grid;
  const double h = g.spacing();
  DiagnosticsRecord r;
  r.t = u.time;
  double m0 = 0.0, m1 = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    const double w = u[j] * u[j];
    m0 += w;
    m1 += g[j] * w;
  }
  r.l2 = std::sqrt(h * m0);
  r.ec = discrete_energy(u.values, LD, h);
  if (m0 > 0.0) {
    r.xbar = m1 / m0;
    double m2 = 0.0;
    for (int j = 0; j < u.size(); ++j) {
      const double dx = g[j] - r.xbar;
      m2 += dx * dx * u[j] * u[j];
    }
    r.sigma = std::sqrt(m2 / m0);
  } else {
    r.moments_defined = false;
    r.xbar = std::numeric_limits<double>::quiet_NaN();
    r.sigma = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

int count_local_extrema(std::span<const double> series) {
  int count = 0;
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double d1 = series[i] - series[i - 1], d2 = series[i + 1] - series[i];
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) ++count;
  }
  return count;
}

LinearStepper::LinearStepper(GridPtr grid, double dt)
    : grid_(std::move(grid)),
      dt_(dt),
      LD_(numgrid::build_schrodinger_L(*grid_)),
      S_(numgrid::build_first_derivative(*grid_) * LD_),
      plus_(S_.shifted(1.0, 0.5 * dt)),
      minus_(S_.shifted(1.0, -0.5 * dt)) {
  if (!std::isfinite(dt) || dt == 0.0) throw InvalidArgument("time step must be finite and nonzero");
}

void LinearStepper::step(std::vector<double>& u) {
  rhs_ = plus_.apply(u);
  std::vector<double> x = minus_.solve(rhs_);
  double res = minus_.residual(x, rhs_);
  // Iterative refinement in the rare case one solve is not enough.
  if (res > 1e-12) {
    for (int pass = 0; pass < 3 && res > 1e-12; ++pass) {
      std::vector<double> r(rhs_);
      const std::vector<double> ax = S_.apply(x);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= x[i] - 0.5 * dt_ * ax[i];
      const std::vector<double> dx = minus_.solve(r);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
      res = minus_.residual(x, rhs_);
    }
    if (res > 1e-12) {
      std::ostringstream msg;
      msg << "implicit solve residual " << res << " after refinement";
      throw SolverError(msg.str());
    }
  }
  last_residual_ = res;
  u.swap(x);
}

Trajectory evolve_linear(const Field& u0, double dt, double t_final, int record_every,
                         std::span<const double> snapshot_times) {
  if (!(dt > 0.0) || dt > 1e-2) throw InvalidArgument("dt must lie in (0, 1e-2]");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be >= 0");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
  const double ratio = t_final / dt;
  const long steps = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
    throw InvalidArgument("t_final must be a multiple of dt");
  for (double v : u0.values)
    if (!std::isfinite(v)) throw InvalidArgument("initial data has non-finite samples");

  LinearStepper stepper(u0.grid, dt);
  const double h = u0.grid->spacing();
  std::set<long> snap_steps;
  for (double ts : snapshot_times) {
    if (ts < 0.0 || ts > t_final * (1.0 + 1e-12)) throw InvalidArgument("snapshot time outside [0, t_final]");
    snap_steps.insert(std::lround(ts / dt));
  }

  Trajectory traj;
  std::vector<double> u = u0.values;
  bool warned = false;
  auto emit = [&](long m) {
    const double t = m == steps ? t_final : static_cast<double>(m) * dt;
    const bool record = m % record_every == 0 || m == steps;
    const bool snap = snapshot_times.empty() ? record : snap_steps.count(m) > 0;
    if (!record && !snap) return;
    Field f(u0.grid, u, t);
    if (record) traj.records.push_back(diagnostics(f, stepper.L()));
    if (!warned)
      if (auto w = numgrid::boundary_warning(f)) {
        traj.warnings.push_back(*w);
        warned = true;
      }
    if (snap) traj.snapshots.push_back(std::move(f));
  };

  const double edge = u0.grid->extent() * 0.875;
  auto track_edge = [&]() {
    for (int j = 0; j < u0.grid->size(); ++j)
      if (std::abs((*u0.grid)[j]) >= edge)
        traj.max_edge_amplitude = std::max(traj.max_edge_amplitude, std::abs(u[static_cast<std::size_t>(j)]));
  };

  double ec = discrete_energy(u, stepper.L(), h);
  track_edge();
  emit(0);
  for (long m = 1; m <= steps; ++m) {
    stepper.step(u);
    for (double v : u)
      if (!std::isfinite(v)) throw DivergenceError("non-finite value in linear evolution", m);
    const double ec_new = discrete_energy(u, stepper.L(), h);
    traj.max_ec_step_drift = std::max(traj.max_ec_step_drift, std::abs(ec_new - ec) / (1.0 + std::abs(ec)));
    traj.max_residual = std::max(traj.max_residual, stepper.last_residual());
    ec = ec_new;
    track_edge();
    emit(m);
  }
  return traj;
}

}  // namespace logkdv::linevolve
