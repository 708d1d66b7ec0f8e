#include "logkdv/numgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "logkdv/error.hpp"

namespace logkdv {
namespace numgrid {

namespace {

void require_periodic(const Grid& grid, const char* op) {
  if (!grid.is_periodic())
    throw InvalidGridError(std::string(op) + " requires a periodic_x grid");
}

// Re-seed the phase recurrence this often to bound accumulated round-off.
constexpr int kResync = 128;

template <class T>
std::vector<cplx> half_line_transform(const Grid& kgrid, std::span<const T> uhat, double sign,
                                      std::span<const double> x_targets) {
  const int n = kgrid.size();
  const double h = kgrid.spacing();
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::vector<cplx> out(x_targets.size());
  for (std::size_t t = 0; t < x_targets.size(); ++t) {
    const double x = x_targets[t];
    const double dphi = sign * h * x;
    const cplx step(std::cos(dphi), std::sin(dphi));
    cplx phase = step;  // k_1 = h
    cplx acc{};
    for (int j = 0; j < n; ++j) {
      if (j % kResync == 0) {
        const double phi = sign * kgrid[j] * x;
        phase = cplx(std::cos(phi), std::sin(phi));
      }
      const double w = (j == n - 1) ? 0.5 : 1.0;
      acc += w * cplx(uhat[static_cast<std::size_t>(j)]) * phase;
      phase *= step;
    }
    out[t] = acc * (h * scale);
  }
  return out;
}

template <class T>
void check_tail(const BasicField<T>& uhat) {
  if (uhat.grid->kind() != GridKind::halfline_k)
    throw InvalidGridError("fourier_quadrature requires a halfline_k field");
  double peak = 0.0;
  for (const T& v : uhat.values) peak = std::max(peak, std::abs(v));
  const int n = uhat.size();
  double tail = 0.0;
  for (int j = std::max(0, n - 2); j < n; ++j) tail = std::max(tail, std::abs(uhat[j]));
  if (tail > 1e-12 * std::max(1.0, peak)) {
    std::ostringstream msg;
    msg << "uhat has not decayed at k_max = " << uhat.grid->extent() << " (tail " << tail << ")";
    throw TruncationError(msg.str(), tail);
  }
}

template <class T>
BasicField<T> cumulative_trapezoid(const BasicField<T>& u) {
  require_periodic(*u.grid, "antiderivative");
  const double h = u.grid->spacing();
  std::vector<T> out(u.values.size());
  T acc{};
  out[0] = acc;
  for (std::size_t j = 1; j < out.size(); ++j) {
    acc += 0.5 * h * (u.values[j - 1] + u.values[j]);
    out[j] = acc;
  }
  return BasicField<T>(u.grid, std::move(out), u.time);
}

}  // namespace

BandOperator build_first_derivative(const Grid& grid) {
  require_periodic(grid, "build_first_derivative");
  const auto n = static_cast<std::size_t>(grid.size());
  const double c = 0.5 / grid.spacing();
  return BandOperator(grid.size(), {-1, 1},
                      {std::vector<double>(n, -c), std::vector<double>(n, c)}, true);
}

BandOperator build_schrodinger_L(const Grid& grid) {
  require_periodic(grid, "build_schrodinger_L");
  const auto n = static_cast<std::size_t>(grid.size());
  const double h2 = grid.spacing() * grid.spacing();
  std::vector<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = grid.points()[j];
    diag[j] = 2.0 / h2 + 0.25 * (x * x - 6.0);
  }
  return BandOperator(grid.size(), {-1, 0, 1},
                      {std::vector<double>(n, -1.0 / h2), std::move(diag),
                       std::vector<double>(n, -1.0 / h2)},
                      true);
}

Field antiderivative(const Field& u) { return cumulative_trapezoid(u); }
ComplexField antiderivative(const ComplexField& u) { return cumulative_trapezoid(u); }

std::vector<cplx> fourier_quadrature(const ComplexField& uhat, Branch branch,
                                     std::span<const double> x_targets) {
  check_tail(uhat);
  return half_line_transform<cplx>(*uhat.grid, uhat.values, branch == Branch::plus ? 1.0 : -1.0,
                                   x_targets);
}

std::vector<cplx> fourier_quadrature(const Field& uhat, Branch branch,
                                     std::span<const double> x_targets) {
  check_tail(uhat);
  return half_line_transform<double>(*uhat.grid, uhat.values,
                                     branch == Branch::plus ? 1.0 : -1.0, x_targets);
}

std::vector<cplx> fourier_transform(const Field& u, std::span<const double> k_targets) {
  require_periodic(*u.grid, "fourier_transform");
  const Grid& g = *u.grid;
  const double h = g.spacing();
  const double scale = h / std::sqrt(2.0 * std::numbers::pi);
  std::vector<cplx> out(k_targets.size());
  for (std::size_t t = 0; t < k_targets.size(); ++t) {
    const double k = k_targets[t];
    const cplx step(std::cos(k * h), -std::sin(k * h));
    cplx phase{};
    cplx acc{};
    for (int j = 0; j < g.size(); ++j) {
      if (j % kResync == 0) {
        const double phi = -k * g[j];
        phase = cplx(std::cos(phi), std::sin(phi));
      }
      acc += u[j] * phase;
      phase *= step;
    }
    out[t] = acc * scale;
  }
  return out;
}

double edge_amplitude(const Field& u, double fraction) {
  require_periodic(*u.grid, "edge_amplitude");
  const double cut = u.grid->extent() * (1.0 - fraction);
  double m = 0.0;
  for (int j = 0; j < u.size(); ++j)
    if (std::abs((*u.grid)[j]) >= cut) m = std::max(m, std::abs(u[j]));
  return m;
}

std::optional<std::string> boundary_warning(const Field& u) {
  const double a = edge_amplitude(u, 0.05);
  if (a <= 1e-8) return std::nullopt;
  std::ostringstream msg;
  msg << "field amplitude " << a << " within 5% of the periodic boundary at t = " << u.time;
  return msg.str();
}

Field sample(const GridPtr& grid, double (*fn)(double)) {
  std::vector<double> v(static_cast<std::size_t>(grid->size()));
  for (int j = 0; j < grid->size(); ++j) v[static_cast<std::size_t>(j)] = fn((*grid)[j]);
  return Field(grid, std::move(v));
}

}  // namespace numgrid

namespace gaussian {

double value(double x) { return std::exp(0.5 - 0.25 * x * x); }
double derivative(double x) { return -0.5 * x * value(x); }
double antiderivative(double x) {
  return std::sqrt(std::numbers::pi) * std::exp(0.5) * (1.0 + std::erf(0.5 * x));
}
double mass() { return 2.0 * std::sqrt(std::numbers::pi) * std::exp(0.5); }
double norm_squared() { return std::numbers::e * std::sqrt(2.0 * std::numbers::pi); }

}  // namespace gaussian

}  // namespace logkdv
