#include "logkdv/nonlin.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "logkdv/error.hpp"
#include "logkdv/numgrid.hpp"

namespace logkdv::nonlin {

RegularizedNonlinearity::RegularizedNonlinearity(double eps_, int m_) : eps(eps_), m(m_) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be positive");
  if (m != 1 && m != 2) throw InvalidArgument("regularization order m must be 1 or 2");
}

double f_log(double v) { return v == 0.0 ? 0.0 : v * std::log(std::abs(v)); }

double W_log(double v) {
  if (v == 0.0) return 0.0;
  return 0.5 * v * v * std::log(std::abs(v)) - 0.25 * v * v;
}

double regularization_constant(int m) {
  if (m == 1) return 1.0 / 8.0;
  if (m == 2) return 1.0 / 12.0;
  throw InvalidArgument("regularization order m must be 1 or 2");
}

double p_eps(double v, const RegularizedNonlinearity& reg) {
  const double e = reg.eps, le = std::log(e);
  const double r2 = (v / e) * (v / e);
  if (reg.m == 1) return (le - 0.5) * v + 0.5 * v * r2;
  return (le - 0.75) * v + v * r2 - 0.25 * v * r2 * r2;
}

double f_eps(double v, const RegularizedNonlinearity& reg) {
  return std::abs(v) >= reg.eps ? f_log(v) : p_eps(v, reg);
}

double df_eps(double v, const RegularizedNonlinearity& reg) {
  if (std::abs(v) >= reg.eps) return std::log(std::abs(v)) + 1.0;
  const double le = std::log(reg.eps);
  const double r2 = (v / reg.eps) * (v / reg.eps);
  if (reg.m == 1) return le - 0.5 + 1.5 * r2;
  return le - 0.75 + 3.0 * r2 - 1.25 * r2 * r2;
}

double W_eps(double v, const RegularizedNonlinearity& reg) {
  const double e = reg.eps;
  if (std::abs(v) >= e) return W_log(v) + regularization_constant(reg.m) * e * e;
  const double le = std::log(e);
  const double v2 = v * v, r2 = v2 / (e * e);
  if (reg.m == 1) return 0.5 * (le - 0.5) * v2 + 0.125 * v2 * r2;
  return 0.5 * (le - 0.75) * v2 + 0.25 * v2 * r2 - v2 * r2 * r2 / 24.0;
}

FunctionalsRecord functionals(const Field& v, const std::optional<RegularizedNonlinearity>& reg) {
  if (!v.grid->is_periodic()) throw InvalidGridError("functionals expect a periodic_x field");
  const Grid& g = *v.grid;
  const std::vector<double> vx = numgrid::build_first_derivative(g).apply(v.values);
  double s2 = 0.0, sx = 0.0, sw = 0.0, swe = 0.0;
  for (int j = 0; j < v.size(); ++j) {
    const double u = v[j];
    s2 += u * u;
    sx += vx[static_cast<std::size_t>(j)] * vx[static_cast<std::size_t>(j)];
    sw += W_log(u);
    if (reg) swe += W_eps(u, *reg);
  }
  const double h = g.spacing();
  FunctionalsRecord r;
  r.t = v.time;
  r.P = 0.5 * h * s2;
  r.E_log = h * (0.5 * sx - sw);
  r.E_eps = reg ? h * (0.5 * sx - swe) : std::numeric_limits<double>::quiet_NaN();
  r.h1 = std::sqrt(h * (s2 + sx));
  return r;
}

Field soliton(double c, double a, const GridPtr& grid, double t_horizon,
              std::vector<std::string>* warnings) {
  if (!grid->is_periodic()) throw InvalidGridError("soliton needs a periodic_x grid");
  if (!std::isfinite(c) || !std::isfinite(a) || !std::isfinite(t_horizon))
    throw InvalidArgument("soliton parameters must be finite");
  const double reach = std::abs(a) + std::abs(c) * std::max(0.0, t_horizon);
  if (warnings && reach >= 0.5 * grid->extent()) {
    std::ostringstream msg;
    msg << "soliton travels to |x| = " << reach << ", beyond half the box (L/2 = "
        << 0.5 * grid->extent() << ")";
    warnings->push_back(msg.str());
  }
  const double amp = std::exp(c);
  std::vector<double> v(static_cast<std::size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j) v[static_cast<std::size_t>(j)] = amp * gaussian::value((*grid)[j] - a);
  return Field(grid, std::move(v));
}

struct SplitStepSolver::Plans {
  int n;
  double* real;
  fftw_complex* spec;
  fftw_plan fwd;
  fftw_plan bwd;

  explicit Plans(int n_) : n(n_) {
    real = fftw_alloc_real(static_cast<std::size_t>(n));
    spec = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
  }
  ~Plans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(spec);
  }
};

SplitStepSolver::SplitStepSolver(GridPtr grid, RegularizedNonlinearity reg, double dt)
    : grid_(std::move(grid)), reg_(reg), dt_(dt) {
  if (!grid_->is_periodic()) throw InvalidGridError("split-step solver needs a periodic_x grid");
  if (!std::isfinite(dt) || dt == 0.0) throw InvalidArgument("time step must be finite and nonzero");
  const int n = grid_->size();
  const double base = std::numbers::pi / grid_->extent();
  k_.resize(static_cast<std::size_t>(n / 2 + 1));
  for (int j = 0; j <= n / 2; ++j) k_[static_cast<std::size_t>(j)] = base * j;
  plans_ = std::make_unique<Plans>(n);
}

SplitStepSolver::~SplitStepSolver() = default;

void SplitStepSolver::linear_flow(std::vector<double>& v, double tau) {
  const int n = grid_->size();
  double before = 0.0, after = 0.0;
  for (int j = 0; j < n; ++j) {
    plans_->real[j] = v[static_cast<std::size_t>(j)];
    before += v[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
  }
  fftw_execute(plans_->fwd);
  const bool even = n % 2 == 0;
  for (int j = 0; j <= n / 2; ++j) {
    // The Nyquist mode of a real signal cannot carry a complex phase.
    if (even && j == n / 2) continue;
    const double k = k_[static_cast<std::size_t>(j)];
    const double ph = k * k * k * tau;
    const double c = std::cos(ph), s = std::sin(ph);
    const double re = plans_->spec[j][0], im = plans_->spec[j][1];
    plans_->spec[j][0] = c * re - s * im;
    plans_->spec[j][1] = s * re + c * im;
  }
  fftw_execute(plans_->bwd);
  const double inv = 1.0 / n;
  for (int j = 0; j < n; ++j) {
    v[static_cast<std::size_t>(j)] = plans_->real[j] * inv;
    after += v[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(j)];
  }
  if (before > 0.0)
    max_norm_defect_ = std::max(max_norm_defect_, std::abs(std::sqrt(after / before) - 1.0));
}

std::vector<double> SplitStepSolver::derivative(std::span<const double> v) {
  const int n = grid_->size();
  for (int j = 0; j < n; ++j) plans_->real[j] = v[static_cast<std::size_t>(j)];
  fftw_execute(plans_->fwd);
  for (int j = 0; j <= n / 2; ++j) {
    const double k = (n % 2 == 0 && j == n / 2) ? 0.0 : k_[static_cast<std::size_t>(j)];
    const double re = plans_->spec[j][0], im = plans_->spec[j][1];
    plans_->spec[j][0] = -k * im;
    plans_->spec[j][1] = k * re;
  }
  fftw_execute(plans_->bwd);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = plans_->real[j] / n;
  return out;
}

std::vector<double> SplitStepSolver::nonlinear_rhs(std::span<const double> v) {
  std::vector<double> f(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) f[j] = f_eps(v[j], reg_);
  std::vector<double> fx = derivative(f);
  for (double& x : fx) x = -x;
  return fx;
}

void SplitStepSolver::step(std::vector<double>& v) {
  linear_flow(v, 0.5 * dt_);
  const std::vector<double> k1 = nonlinear_rhs(v);
  std::vector<double> mid(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) mid[j] = v[j] + 0.5 * dt_ * k1[j];
  const std::vector<double> k2 = nonlinear_rhs(mid);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += dt_ * k2[j];
  linear_flow(v, 0.5 * dt_);
}

namespace {

double cfl_number(std::span<const double> v, const RegularizedNonlinearity& reg, double dt, double h) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(df_eps(x, reg)));
  return dt * m / h;
}

}  // namespace

NonlinearTrajectory evolve_nonlinear(const Field& v0, const RegularizedNonlinearity& reg, double dt,
                                     double t_final, int record_every,
                                     std::span<const double> snapshot_times) {
  if (!v0.grid->is_periodic()) throw InvalidGridError("evolve_nonlinear needs a periodic_x field");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be >= 0");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
  RegularizedNonlinearity checked(reg.eps, reg.m);
  const double ratio = t_final / dt;
  const long steps = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
    throw InvalidArgument("t_final must be a multiple of dt");
  double vmax0 = 0.0;
  for (double x : v0.values) {
    if (!std::isfinite(x)) throw InvalidArgument("initial data has non-finite samples");
    vmax0 = std::max(vmax0, std::abs(x));
  }

  std::set<long> snap_steps;
  for (double ts : snapshot_times) {
    if (ts < 0.0 || ts > t_final * (1.0 + 1e-12)) throw InvalidArgument("snapshot time outside [0, t_final]");
    snap_steps.insert(std::lround(ts / dt));
  }

  SplitStepSolver solver(v0.grid, checked, dt);
  const double h = v0.grid->spacing();
  NonlinearTrajectory traj;
  bool cfl_warned = false;
  std::vector<double> v = v0.values;
  auto emit = [&](long m) {
    const double t = m == steps ? t_final : static_cast<double>(m) * dt;
    const bool record = m % record_every == 0 || m == steps;
    const bool snap = snapshot_times.empty() ? record : snap_steps.count(m) > 0;
    if (!record && !snap) return;
    Field f(v0.grid, v, t);
    if (record) {
      traj.records.push_back(functionals(f, checked));
      const double cfl = cfl_number(v, checked, dt, h);
      if (cfl > 1.0 && !cfl_warned) {
        std::ostringstream msg;
        msg << "CFL number dt*max|f'|/h = " << cfl << " exceeds 1 at t = " << t;
        traj.warnings.push_back(msg.str());
        cfl_warned = true;
      }
    }
    if (snap) traj.snapshots.push_back(std::move(f));
  };

  emit(0);
  const double blowup = 1e8 * std::max(1.0, vmax0);
  for (long m = 1; m <= steps; ++m) {
    solver.step(v);
    for (double x : v)
      if (!std::isfinite(x) || std::abs(x) > blowup)
        throw DivergenceError("nonlinear evolution blew up", m);
    emit(m);
  }
  traj.max_linear_norm_defect = solver.max_linear_norm_defect();
  return traj;
}

EpsReport eps_convergence(const Field& v0, std::span<const double> eps_list, double dt,
                          double t_final, int m) {
  if (eps_list.empty()) throw InvalidArgument("eps list is empty");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1])) throw InvalidArgument("eps list must be strictly decreasing");

  EpsReport rep;
  const std::size_t r = eps_list.size();
  rep.eps.assign(eps_list.begin(), eps_list.end());
  rep.finals.resize(r);
  rep.P_drift.assign(r, std::numeric_limits<double>::quiet_NaN());
  rep.E_drift.assign(r, std::numeric_limits<double>::quiet_NaN());
  rep.errors.resize(r);
  const int record_every = std::max(1, static_cast<int>(std::lround(t_final / dt / 100.0)));
  for (std::size_t i = 0; i < r; ++i) {
    try {
      const RegularizedNonlinearity reg(eps_list[i], m);
      const NonlinearTrajectory traj = evolve_nonlinear(v0, reg, dt, t_final, record_every);
      const FunctionalsRecord& f0 = traj.records.front();
      double dp = 0.0, de = 0.0;
      for (const auto& rec : traj.records) {
        dp = std::max(dp, std::abs(rec.P - f0.P));
        de = std::max(de, std::abs(rec.E_eps - f0.E_eps));
      }
      rep.P_drift[i] = f0.P > 0.0 ? dp / f0.P : dp;
      rep.E_drift[i] = std::abs(f0.E_eps) > 0.0 ? de / std::abs(f0.E_eps) : de;
      rep.finals[i] = traj.snapshots.back();
    } catch (const Error& e) {
      rep.errors[i] = e.what();
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.distance.assign(r, std::vector<double>(r, nan));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (!rep.errors[i].empty() || !rep.errors[j].empty()) continue;
      double s = 0.0;
      for (int q = 0; q < v0.size(); ++q) {
        const double d = rep.finals[i][q] - rep.finals[j][q];
        s += d * d;
      }
      rep.distance[i][j] = std::sqrt(v0.grid->spacing() * s);
    }
  return rep;
}

}  // namespace logkdv::nonlin
