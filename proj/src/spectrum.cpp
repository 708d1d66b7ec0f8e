#include "logkdv/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "logkdv/error.hpp"
#include "logkdv/tridiag_eigen.hpp"

namespace logkdv::spectrum {

std::vector<EigenMode> solve_half_line(double k_max, int n_points, int n_modes, Branch branch) {
  if (!(k_max >= 8.0)) throw InvalidArgument("k_max must be at least 8");
  if (n_modes < 1 || n_modes > 64) throw InvalidArgument("n_modes must lie in [1, 64]");
  const GridPtr grid = Grid::halfline(k_max, n_points);
  const double h = grid->spacing();
  const int m = n_points - 1;  // k_n = k_max carries the Dirichlet zero
  if (n_modes > m) throw InvalidArgument("n_modes exceeds the number of unknowns");

  std::vector<double> d(static_cast<std::size_t>(m)), e(static_cast<std::size_t>(m - 1));
  for (int j = 0; j < m; ++j) {
    const double k = (*grid)[j];
    d[static_cast<std::size_t>(j)] = k * (2.0 / (h * h) + 4.0 * k * k - 6.0);
    if (j + 1 < m) e[static_cast<std::size_t>(j)] = -std::sqrt(k * (*grid)[j + 1]) / (h * h);
  }
  const TridiagEigenpairs eig = tridiag_lowest(d, e, n_modes);

  std::vector<EigenMode> modes;
  modes.reserve(static_cast<std::size_t>(n_modes));
  const double norm = 1.0 / std::sqrt(h);
  for (int i = 0; i < n_modes; ++i) {
    const auto& y = eig.vectors[static_cast<std::size_t>(i)];
    const double sign = y[0] < 0.0 ? -1.0 : 1.0;
    std::vector<double> vh(static_cast<std::size_t>(n_points), 0.0), uh(vh.size(), 0.0);
    for (int j = 0; j < m; ++j) {
      vh[static_cast<std::size_t>(j)] = sign * norm * y[static_cast<std::size_t>(j)];
      uh[static_cast<std::size_t>(j)] = std::sqrt((*grid)[j]) * vh[static_cast<std::size_t>(j)];
    }
    EigenMode mode;
    mode.n = i;
    mode.E = eig.values[static_cast<std::size_t>(i)];
    mode.omega = 0.25 * mode.E;
    mode.vhat = Field(grid, std::move(vh));
    mode.uhat = Field(grid, std::move(uh));
    modes.push_back(std::move(mode));
  }

  // The ground state must have decayed well before the truncation point.
  const auto& v0 = modes.front().vhat.values;
  double peak = 0.0;
  for (double v : v0) peak = std::max(peak, std::abs(v));
  const double tail = std::abs(v0[static_cast<std::size_t>(m - 1)]);
  if (tail > 1e-12 * peak) {
    std::ostringstream msg;
    msg << "lowest eigenfunction not decayed at k_max = " << k_max << " (tail " << tail << ")";
    throw TruncationError(msg.str(), tail);
  }

  if (branch == Branch::minus)
    for (auto& mode : modes) mode = reflect(mode);
  return modes;
}

EigenMode reflect(const EigenMode& mode) {
  EigenMode out = mode;
  out.branch = mode.branch == Branch::plus ? Branch::minus : Branch::plus;
  out.E = -mode.E;
  out.omega = -mode.omega;
  for (auto& z : out.u_physical) z = std::conj(z);
  return out;
}

double frobenius_u1(double E, double k, int n_terms) {
  if (n_terms > 3) throw UnsupportedOrderError("frobenius_u1: only terms through k^3 are known");
  if (n_terms < 2) throw InvalidArgument("frobenius_u1: n_terms must be 2 or 3");
  if (std::abs(k) > 0.5) throw InvalidArgument("frobenius_u1: |k| must not exceed 0.5");
  double u = k - 0.5 * E * k * k;
  if (n_terms == 3) u += (E * E / 12.0 - 1.0) * k * k * k;
  return u;
}

std::vector<cplx> mode_to_physical(EigenMode& mode, std::span<const double> x_targets) {
  mode.x.assign(x_targets.begin(), x_targets.end());
  mode.u_physical = numgrid::fourier_quadrature(mode.uhat, mode.branch, x_targets);
  return mode.u_physical;
}

int nodal_count(const EigenMode& mode) {
  const auto& v = mode.vhat.values;
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const double floor = 1e-10 * peak;
  int changes = 0;
  double prev = 0.0;
  for (double x : v) {
    if (std::abs(x) <= floor) continue;
    if (prev != 0.0 && (x > 0.0) != (prev > 0.0)) ++changes;
    prev = x;
  }
  return changes;
}

DecayFit fit_decay_exponent(std::span<const double> x, std::span<const cplx> samples,
                            std::array<double, 2> window, Part part) {
  if (x.size() != samples.size()) throw InvalidArgument("fit_decay_exponent: size mismatch");
  if (!(window[0] > 0.0) || !(window[1] > window[0]))
    throw InvalidArgument("fit_decay_exponent: window must satisfy 0 < x_lo < x_hi");
  std::vector<double> lx, ly;
  double peak = 0.0;
  int in_window = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ax = std::abs(x[i]);
    if (ax < window[0] || ax > window[1]) continue;
    ++in_window;
    const double v = std::abs(part == Part::real ? samples[i].real() : samples[i].imag());
    peak = std::max(peak, v);
    if (v > 0.0) {
      lx.push_back(std::log(ax));
      ly.push_back(std::log(v));
    }
  }
  if (in_window < 20) throw DegenerateFitError("fewer than 20 samples in the fit window");
  if (peak <= 1e-10) throw DegenerateFitError("selected part is below the noise floor in the window");
  if (lx.size() < 2) throw DegenerateFitError("not enough nonzero samples to fit");

  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = n * sxx - sx * sx;
  if (!(den > 0.0)) throw DegenerateFitError("window spans a single |x| value");
  DecayFit fit;
  fit.p = -(n * sxy - sx * sy) / den;
  fit.super_algebraic = fit.p > 10.0;
  fit.samples = static_cast<int>(lx.size());
  return fit;
}

}  // namespace logkdv::spectrum
