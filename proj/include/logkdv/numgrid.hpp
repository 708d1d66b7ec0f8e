#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logkdv/band_operator.hpp"
#include "logkdv/grid.hpp"

namespace logkdv {

enum class Branch { plus, minus };

namespace numgrid {

/// Periodic central difference, (u_{j+1} - u_{j-1}) / 2h.
BandOperator build_first_derivative(const Grid& grid);

/// Cyclic tridiagonal discretization of -d^2/dx^2 + (x^2 - 6)/4.
BandOperator build_schrodinger_L(const Grid& grid);

/// Cumulative trapezoid integral from the left edge, which stands in for
/// -infinity. No mean subtraction.
Field antiderivative(const Field& u);
ComplexField antiderivative(const ComplexField& u);

/// Inverse transform of a half-line Fourier profile,
///   plus:  (2 pi)^{-1/2} int_0^{k_max} uhat(k) e^{ikx} dk
///   minus: (2 pi)^{-1/2} int_{-k_max}^0 uhat(-k) e^{ikx} dk
/// evaluated by the trapezoid rule at arbitrary targets. The k = 0 sample
/// is taken as zero. Throws TruncationError when uhat has not decayed to
/// 1e-12 (relative to max(1, max|uhat|)) at k_max.
std::vector<cplx> fourier_quadrature(const ComplexField& uhat, Branch branch,
                                     std::span<const double> x_targets);
std::vector<cplx> fourier_quadrature(const Field& uhat, Branch branch,
                                     std::span<const double> x_targets);

/// Forward transform (2 pi)^{-1/2} int u(x) e^{-ikx} dx of a periodic-grid
/// field, by trapezoid quadrature, at the given wavenumbers.
std::vector<cplx> fourier_transform(const Field& u, std::span<const double> k_targets);

/// Largest |u| within `fraction` of the half width from either edge.
double edge_amplitude(const Field& u, double fraction = 0.05);

/// Warning text when a field exceeds 1e-8 near the periodic boundary.
std::optional<std::string> boundary_warning(const Field& u);

Field sample(const GridPtr& grid, double (*fn)(double));

}  // namespace numgrid

/// The Gaussian standing wave v_G(x) = exp(1/2 - x^2/4) and relatives.
namespace gaussian {

double value(double x);
double derivative(double x);
/// Closed-form antiderivative from -infinity: sqrt(pi) e^{1/2} (1 + erf(x/2)).
double antiderivative(double x);
/// Total mass 2 sqrt(pi) e^{1/2}.
double mass();
/// ||v_G||^2 = e sqrt(2 pi).
double norm_squared();

}  // namespace gaussian

}  // namespace logkdv
