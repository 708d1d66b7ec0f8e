#include "logkdv/grid.hpp"

#include <cmath>
#include <string>

#include "logkdv/error.hpp"

namespace logkdv {

namespace {
constexpr int kMinPoints = 16;
}

Grid::Grid(GridKind kind, double extent, int n) : kind_(kind), extent_(extent) {
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw InvalidGridError("grid extent must be positive and finite");
  if (n < kMinPoints)
    throw InvalidGridError("grid needs at least 16 points, got " + std::to_string(n));
  points_.resize(static_cast<std::size_t>(n));
  if (kind == GridKind::periodic_x) {
    spacing_ = 2.0 * extent / n;
    for (int j = 0; j < n; ++j) points_[static_cast<std::size_t>(j)] = -extent + j * spacing_;
  } else {
    spacing_ = extent / n;
    for (int j = 0; j < n; ++j) points_[static_cast<std::size_t>(j)] = (j + 1) * spacing_;
  }
}

GridPtr Grid::periodic(double half_width, int n_points) {
  return GridPtr(new Grid(GridKind::periodic_x, half_width, n_points));
}

GridPtr Grid::halfline(double k_max, int n_points) {
  return GridPtr(new Grid(GridKind::halfline_k, k_max, n_points));
}

template <class T>
BasicField<T>::BasicField(GridPtr g, std::vector<T> v, double t)
    : grid(std::move(g)), values(std::move(v)), time(t) {
  if (!grid) throw InvalidArgument("field requires a grid");
  if (static_cast<int>(values.size()) != grid->size())
    throw InvalidArgument("field length " + std::to_string(values.size()) +
                          " does not match grid size " + std::to_string(grid->size()));
}

template struct BasicField<double>;
template struct BasicField<cplx>;

namespace {

template <class T>
T trapezoid(const Grid& grid, std::span<const T> f) {
  if (static_cast<int>(f.size()) != grid.size())
    throw InvalidArgument("integrand length does not match grid");
  T sum{};
  for (const T& v : f) sum += v;
  if (grid.kind() == GridKind::halfline_k) {
    // Endpoint k_max gets half weight; k = 0 contributes zero.
    sum -= 0.5 * f.back();
  }
  return sum * grid.spacing();
}

}  // namespace

double integrate(const Grid& grid, std::span<const double> f) { return trapezoid(grid, f); }
cplx integrate(const Grid& grid, std::span<const cplx> f) { return trapezoid(grid, f); }

double inner(const Field& a, const Field& b) {
  if (a.grid != b.grid && a.grid->size() != b.grid->size())
    throw InvalidArgument("inner product of fields on different grids");
  std::vector<double> prod(a.values.size());
  for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = a.values[j] * b.values[j];
  return integrate(*a.grid, prod);
}

double l2_norm(const Field& a) { return std::sqrt(inner(a, a)); }

}  // namespace logkdv
