#include "logkdv/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "logkdv/error.hpp"
#include "logkdv/numgrid.hpp"

namespace logkdv::modal {

namespace {

void check_modes(const std::vector<EigenMode>& modes) {
  if (modes.empty() || modes.front().n != 0 || modes.front().branch != Branch::plus)
    throw InvalidArgument("mode list must be plus-branch and start at n = 0");
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].n != static_cast<int>(i)) throw InvalidArgument("mode indices must be 0, 1, 2, ...");
}

// int vhat_n vhat_m dk must be the identity for the pairing to be symplectic.
void check_gram(const std::vector<EigenMode>& modes) {
  const Grid& kg = *modes.front().vhat.grid;
  double defect = 0.0;
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = a; b < modes.size(); ++b) {
      if (modes[b].vhat.size() != kg.size() || modes[b].vhat.grid->spacing() != kg.spacing())
        throw InvalidArgument("modes live on different k grids");
      std::vector<double> prod(modes[a].vhat.values.size());
      for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = modes[a].vhat.values[j] * modes[b].vhat.values[j];
      defect = std::max(defect, std::abs(integrate(kg, prod) - (a == b ? 1.0 : 0.0)));
    }
  if (defect > 1e-4) {
    std::ostringstream msg;
    msg << "mode set is not normalized (Gram defect " << defect << ")";
    throw NormalizationError(msg.str());
  }
}

}  // namespace

ModalCoefficients project(const Field& u0, const std::vector<EigenMode>& modes) {
  if (!u0.grid->is_periodic()) throw InvalidGridError("project expects a periodic_x field");
  check_modes(modes);
  check_gram(modes);
  const Grid& xg = *u0.grid;
  const Grid& kg = *modes.front().uhat.grid;

  std::vector<double> vg(static_cast<std::size_t>(xg.size())), avg(vg.size());
  for (int j = 0; j < xg.size(); ++j) {
    vg[static_cast<std::size_t>(j)] = gaussian::value(xg[j]);
    avg[static_cast<std::size_t>(j)] = gaussian::antiderivative(xg[j]);
  }
  const Field vgf(u0.grid, vg);
  const double vg_norm2 = inner(vgf, vgf);
  const double vg_mass = integrate(xg, vg);

  ModalCoefficients c;
  c.n_modes = static_cast<int>(modes.size()) - 1;
  c.b = inner(vgf, u0) / vg_norm2;
  c.a0_formula = (0.5 * c.b * vg_mass * vg_mass - inner(Field(u0.grid, avg), u0)) / vg_norm2;

  // Fourier side of the residual u0 - b v_G.
  std::vector<double> r(u0.values);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c.b * vg[j];
  const std::vector<cplx> rhat = numgrid::fourier_transform(Field(u0.grid, std::move(r)), kg.points());

  // a_{+n} = i int conj(uhat_n) rhat / (ik) dk, a_{-n} its mirror.
  std::vector<cplx> wp(rhat.size()), wm(rhat.size());
  for (int j = 0; j < kg.size(); ++j) {
    wp[static_cast<std::size_t>(j)] = rhat[static_cast<std::size_t>(j)] / kg[j];
    wm[static_cast<std::size_t>(j)] = std::conj(rhat[static_cast<std::size_t>(j)]) / kg[j];
  }
  std::vector<cplx> fp(rhat.size()), fm(rhat.size());
  for (std::size_t n = 0; n < modes.size(); ++n) {
    for (std::size_t j = 0; j < rhat.size(); ++j) {
      fp[j] = modes[n].uhat.values[j] * wp[j];
      fm[j] = modes[n].uhat.values[j] * wm[j];
    }
    const cplx ap = integrate(kg, fp);
    const cplx am = integrate(kg, fm);
    if (n == 0) {
      c.a0 = std::numbers::sqrt2 * std::exp(-0.5) * ap.imag();
      c.zero_even = ap.real();
    } else {
      c.a_plus.push_back(ap);
      c.a_minus.push_back(am);
    }
  }
  return c;
}

std::vector<double> reconstruct(const ModalCoefficients& c, const std::vector<EigenMode>& modes,
                                double t, std::span<const double> x_targets) {
  check_modes(modes);
  if (static_cast<int>(modes.size()) < c.n_modes + 1 ||
      c.a_plus.size() != static_cast<std::size_t>(c.n_modes) || c.a_minus.size() != c.a_plus.size())
    throw InvalidArgument("reconstruct: coefficients and modes do not match");

  const std::size_t nx = x_targets.size();
  std::vector<cplx> sum(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = x_targets[i];
    sum[i] = c.b * (gaussian::value(x) - t * gaussian::derivative(x)) + c.a0 * gaussian::derivative(x);
  }
  if (c.zero_even != 0.0) {
    const auto u0 = numgrid::fourier_quadrature(modes[0].uhat, Branch::plus, x_targets);
    for (std::size_t i = 0; i < nx; ++i) sum[i] += 2.0 * c.zero_even * u0[i].real();
  }
  for (int n = 1; n <= c.n_modes; ++n) {
    const auto& mode = modes[static_cast<std::size_t>(n)];
    const cplx ap = c.a_plus[static_cast<std::size_t>(n - 1)];
    const cplx am = c.a_minus[static_cast<std::size_t>(n - 1)];
    if (ap == 0.0 && am == 0.0) continue;
    const cplx phase = std::polar(1.0, mode.omega * t);
    const auto up = numgrid::fourier_quadrature(mode.uhat, Branch::plus, x_targets);
    // u_{-n}(x) is the conjugate of u_{+n}(x) for a real uhat.
    for (std::size_t i = 0; i < nx; ++i)
      sum[i] += ap * phase * up[i] + am * std::conj(phase) * std::conj(up[i]);
  }

  double re = 0.0, im = 0.0;
  for (const cplx& z : sum) {
    re = std::max(re, std::abs(z.real()));
    im = std::max(im, std::abs(z.imag()));
  }
  if (im > 1e-8 * std::max(1.0, re)) {
    std::ostringstream msg;
    msg << "reconstruction has imaginary part " << im << " (conjugate pairing broken)";
    throw RealityViolationError(msg.str());
  }
  std::vector<double> out(nx);
  for (std::size_t i = 0; i < nx; ++i) out[i] = sum[i].real();
  return out;
}

Field reconstruct(const ModalCoefficients& c, const std::vector<EigenMode>& modes, double t,
                  const GridPtr& x_grid) {
  return Field(x_grid, reconstruct(c, modes, t, x_grid->points()), t);
}

double ec_modal(const ModalCoefficients& c, std::span<const double> omegas) {
  if (std::abs(c.b) > 1e-8)
    throw ConstraintViolationError("ec_modal needs data orthogonal to v_G (b = " + std::to_string(c.b) + ")");
  if (omegas.size() < c.a_plus.size()) throw InvalidArgument("ec_modal: missing frequencies");
  double s = 0.0;
  for (std::size_t i = 0; i < c.a_plus.size(); ++i)
    s += omegas[i] * (std::norm(c.a_plus[i]) + std::norm(c.a_minus[i]));
  return 0.5 * s;
}

ModalCoefficients advance(const ModalCoefficients& c, const std::vector<EigenMode>& modes, double t) {
  ModalCoefficients out = c;
  out.a0 = c.a0 - c.b * t;
  for (std::size_t i = 0; i < c.a_plus.size(); ++i) {
    const cplx phase = std::polar(1.0, modes.at(i + 1).omega * t);
    out.a_plus[i] = c.a_plus[i] * phase;
    out.a_minus[i] = c.a_minus[i] * std::conj(phase);
  }
  return out;
}

}  // namespace logkdv::modal
