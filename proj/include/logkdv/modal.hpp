#pragma once

#include <span>
#include <vector>

#include "logkdv/grid.hpp"
#include "logkdv/spectrum.hpp"

namespace logkdv::modal {

/// Coefficients of a field in the generalized eigenbasis of d_x L:
///   u(x, t) = b (v_G - t v_G') + a0 v_G' + zero_even w
///           + sum_n a_plus[n] u_{+n} e^{i w_n t} + a_minus[n] u_{-n} e^{-i w_n t}
/// with w = 2 Re u_{+0} the even stationary function of the zero pair.
/// a_plus[i] and a_minus[i] belong to mode n = i + 1.
struct ModalCoefficients {
  double b = 0.0;
  double a0 = 0.0;
  double a0_formula = 0.0;  // the x-space bracket, kept for comparison
  double zero_even = 0.0;
  std::vector<cplx> a_plus;
  std::vector<cplx> a_minus;
  int n_modes = 0;
};

/// `modes` is a plus-branch list starting at n = 0 (the zero pair).
ModalCoefficients project(const Field& u0, const std::vector<EigenMode>& modes);

/// Evaluate the truncated expansion at time t. Modes must carry indices
/// 0..c.n_modes. Throws RealityViolationError if the imaginary part of the
/// sum exceeds 1e-8 relative to its real part.
Field reconstruct(const ModalCoefficients& c, const std::vector<EigenMode>& modes, double t,
                  const GridPtr& x_grid);
std::vector<double> reconstruct(const ModalCoefficients& c, const std::vector<EigenMode>& modes,
                                double t, std::span<const double> x_targets);

/// 1/2 sum w_n (|a_{+n}|^2 + |a_{-n}|^2); requires |b| <= 1e-8.
/// `omegas[i]` belongs to mode n = i + 1.
double ec_modal(const ModalCoefficients& c, std::span<const double> omegas);

/// Coefficients advanced in time: a_{+-n} e^{+-i w_n t}, b and a0 carried
/// along the Jordan block (a0 -> a0 - b t).
ModalCoefficients advance(const ModalCoefficients& c, const std::vector<EigenMode>& modes, double t);

}  // namespace logkdv::modal
