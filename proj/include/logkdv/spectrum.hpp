#pragma once

#include <array>
#include <span>
#include <vector>

#include "logkdv/grid.hpp"
#include "logkdv/numgrid.hpp"

namespace logkdv {

/// One eigenpair of the half-line problem
///   k^{1/2} (-d^2/dk^2 + 4k^2 - 6) k^{1/2} vhat = E vhat.
struct EigenMode {
  Branch branch = Branch::plus;
  int n = 0;
  double E = 0.0;
  double omega = 0.0;  // E / 4
  Field vhat;          // int vhat^2 dk = 1
  Field uhat;          // k^{1/2} vhat
  std::vector<double> x;
  std::vector<cplx> u_physical;
};

namespace spectrum {

/// Lowest `n_modes` eigenpairs on k in (0, k_max] with Dirichlet ends.
/// Branch minus is the reflection of branch plus: same samples, E -> -E.
std::vector<EigenMode> solve_half_line(double k_max, int n_points, int n_modes,
                                       Branch branch = Branch::plus);

/// The mirror mode: uhat_-(k) = uhat_+(-k), E -> -E.
EigenMode reflect(const EigenMode& mode);

/// k - E k^2 / 2 + (E^2/12 - 1) k^3, truncated to `n_terms` in {2, 3}.
double frobenius_u1(double E, double k, int n_terms = 3);

/// Inverse transform of mode.uhat at the targets; also stored on the mode.
std::vector<cplx> mode_to_physical(EigenMode& mode, std::span<const double> x_targets);

/// Interior sign changes of vhat, ignoring samples at round-off level.
int nodal_count(const EigenMode& mode);

enum class Part { real, imag };

struct DecayFit {
  double p = 0.0;
  bool super_algebraic = false;  // p > 10: faster than any sensible power
  int samples = 0;
};

/// Least-squares slope of log|part| against log|x| on the window,
/// returned as p = -slope.
DecayFit fit_decay_exponent(std::span<const double> x, std::span<const cplx> samples,
                            std::array<double, 2> window, Part part);

}  // namespace spectrum
}  // namespace logkdv
