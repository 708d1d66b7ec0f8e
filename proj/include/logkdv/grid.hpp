#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace logkdv {

using cplx = std::complex<double>;

enum class GridKind { periodic_x, halfline_k };

/// Uniform 1-D sample set.
///
/// periodic_x: x_j = -L + j h, j = 0..n-1, h = 2L/n (the point x = L is the
/// periodic image of x_0).
/// halfline_k: k_j = j h, j = 1..n, h = k_max/n; k = 0 is excluded and
/// carries an implicit zero sample.
class Grid {
 public:
  static std::shared_ptr<const Grid> periodic(double half_width, int n_points);
  static std::shared_ptr<const Grid> halfline(double k_max, int n_points);

  GridKind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == GridKind::periodic_x; }
  /// L for periodic_x, k_max for halfline_k.
  double extent() const { return extent_; }
  int size() const { return static_cast<int>(points_.size()); }
  double spacing() const { return spacing_; }
  std::span<const double> points() const { return points_; }
  double operator[](int j) const { return points_[static_cast<std::size_t>(j)]; }

 private:
  Grid(GridKind kind, double extent, int n);

  GridKind kind_;
  double extent_;
  double spacing_;
  std::vector<double> points_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Sampled function on a grid, time stamped.
template <class T>
struct BasicField {
  GridPtr grid;
  std::vector<T> values;
  double time = 0.0;

  BasicField() = default;
  BasicField(GridPtr g, std::vector<T> v, double t = 0.0);

  int size() const { return static_cast<int>(values.size()); }
  T operator[](int j) const { return values[static_cast<std::size_t>(j)]; }
  T& operator[](int j) { return values[static_cast<std::size_t>(j)]; }
  std::span<const T> span() const { return values; }
};

using Field = BasicField<double>;
using ComplexField = BasicField<cplx>;

extern template struct BasicField<double>;
extern template struct BasicField<cplx>;

/// Trapezoid integral of samples on the grid. For periodic_x this is
/// h * sum; for halfline_k the k = 0 sample is taken as zero.
double integrate(const Grid& grid, std::span<const double> f);
cplx integrate(const Grid& grid, std::span<const cplx> f);

/// Real L2 inner product by trapezoid quadrature.
double inner(const Field& a, const Field& b);
double l2_norm(const Field& a);

}  // namespace logkdv
