#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "logkdv/error.hpp"
#include "logkdv/numgrid.hpp"

using namespace logkdv;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double gauss4(double x) { return std::exp(-x * x / 4.0); }
double x_gauss4(double x) { return x * std::exp(-x * x / 4.0); }

}  // namespace

TEST_CASE("grid invariants") {
  const auto g = Grid::periodic(40.0, 4096);
  CHECK(g->is_periodic());
  CHECK(g->size() == 4096);
  CHECK((*g)[0] == -40.0);
  CHECK(g->spacing() == 80.0 / 4096);
  for (int j = 0; j + 1 < g->size(); ++j) CHECK((*g)[j + 1] - (*g)[j] == g->spacing());
  CHECK((*g)[4095] < 40.0);

  const auto k = Grid::halfline(12.0, 4000);
  CHECK(!k->is_periodic());
  CHECK((*k)[0] > 0.0);
  CHECK((*k)[3999] == doctest::Approx(12.0).epsilon(1e-15));

  CHECK_THROWS_AS(Grid::periodic(40.0, 15), InvalidGridError);
  CHECK_THROWS_AS(Grid::halfline(-1.0, 100), InvalidGridError);
}

TEST_CASE("operators need a periodic grid") {
  const auto k = Grid::halfline(12.0, 64);
  CHECK_THROWS_AS(numgrid::build_first_derivative(*k), InvalidGridError);
  CHECK_THROWS_AS(numgrid::build_schrodinger_L(*k), InvalidGridError);
}

TEST_CASE("D annihilates constants and has the central-difference symbol") {
  const double L = 40.0;
  const auto g = Grid::periodic(L, 512);
  const double h = g->spacing();
  const auto D = numgrid::build_first_derivative(*g);
  std::vector<double> one(512, 1.0);
  for (double v : D.apply(one)) CHECK(v == 0.0);

  for (int m : {1, 7, 40}) {
    const double kk = m * M_PI / L;
    std::vector<double> s(512), expect(512);
    for (int j = 0; j < 512; ++j) {
      s[static_cast<std::size_t>(j)] = std::sin(kk * (*g)[j]);
      expect[static_cast<std::size_t>(j)] = std::cos(kk * (*g)[j]) * std::sin(kk * h) / h;
    }
    CHECK(max_abs_diff(D.apply(s), expect) < 1e-12 / h);
  }
}

TEST_CASE("D on a Gaussian converges at second order") {
  auto err = [](int n) {
    const auto g = Grid::periodic(40.0, n);
    const auto u = numgrid::sample(g, gauss4);
    const auto du = numgrid::build_first_derivative(*g).apply(u.values);
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = (*g)[j];
      e = std::max(e, std::abs(du[static_cast<std::size_t>(j)] + 0.5 * x * gauss4(x)));
    }
    return e;
  };
  const double e1 = err(2048), e2 = err(4096);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
  const double h = 80.0 / 2048;
  CHECK(e1 < h * h);
}

TEST_CASE("L_D eigen relations on the Gaussian and its derivative") {
  const auto g = Grid::periodic(40.0, 4096);
  const double h = g->spacing();
  const auto LD = numgrid::build_schrodinger_L(*g);
  const auto vg = numgrid::sample(g, gaussian::value);
  const auto lv = LD.apply(vg.values);
  double res = 0.0;
  for (int j = 0; j < g->size(); ++j) res = std::max(res, std::abs(lv[static_cast<std::size_t>(j)] + vg[j]));
  CHECK(res < h * h);
  const auto k = numgrid::sample(g, x_gauss4);
  double rk = 0.0;
  for (double v : LD.apply(k.values)) rk = std::max(rk, std::abs(v));
  CHECK(rk < h * h);
}

TEST_CASE("three smallest eigenvalues of L_D are -1, 0, 1") {
  const int n = 2048;
  const auto g = Grid::periodic(40.0, n);
  const auto dense = numgrid::build_schrodinger_L(*g).dense();
  Eigen::MatrixXd M = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      dense.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  const auto ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(std::abs(ev(1)) < 1e-3);
  CHECK(ev(2) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("antiderivative examples") {
  const auto g = Grid::periodic(40.0, 4096);
  const double h = g->spacing();
  const auto dvg = numgrid::sample(g, gaussian::derivative);
  const auto back = numgrid::antiderivative(dvg);
  const auto vg = numgrid::sample(g, gaussian::value);
  CHECK(max_abs_diff(back.values, vg.values) < h * h);
  CHECK(std::abs(back[0]) < 1e-300 + 1e-12);

  const auto mass = numgrid::antiderivative(vg);
  CHECK(mass.values.back() == doctest::Approx(2.0 * std::sqrt(M_PI) * std::exp(0.5)).epsilon(1e-10));
  CHECK(gaussian::mass() == doctest::Approx(5.845).epsilon(1e-3));

  const auto odd = numgrid::sample(g, x_gauss4);
  CHECK(std::abs(numgrid::antiderivative(odd).values.back()) < 1e-10);
}

TEST_CASE("antiderivative of D u converges at second order") {
  auto err = [](int n) {
    const auto g = Grid::periodic(40.0, n);
    const auto u = numgrid::sample(g, gaussian::value);
    Field du(g, numgrid::build_first_derivative(*g).apply(u.values));
    return max_abs_diff(numgrid::antiderivative(du).values, u.values);
  };
  const double order = std::log2(err(1024) / err(2048));
  CHECK(order >= 1.9);
}

TEST_CASE("complex antiderivative acts componentwise") {
  const auto g = Grid::periodic(10.0, 256);
  std::vector<cplx> z(256);
  std::vector<double> re(256), im(256);
  for (int j = 0; j < 256; ++j) {
    const double x = (*g)[j];
    re[static_cast<std::size_t>(j)] = gauss4(x);
    im[static_cast<std::size_t>(j)] = x_gauss4(x);
    z[static_cast<std::size_t>(j)] = {gauss4(x), x_gauss4(x)};
  }
  const auto Z = numgrid::antiderivative(ComplexField(g, z));
  const auto R = numgrid::antiderivative(Field(g, re));
  const auto I = numgrid::antiderivative(Field(g, im));
  for (int j = 0; j < 256; ++j) {
    CHECK(Z[j].real() == R[j]);
    CHECK(Z[j].imag() == I[j]);
  }
}

TEST_CASE("glued transform of k e^{-k^2} is the x e^{-x^2/4} eigenfunction") {
  // (2pi)^{-1/2} int_R k e^{-k^2} e^{ikx} dk over the odd extension
  // = i x e^{-x^2/4} / (2 sqrt 2).
  const auto k = Grid::halfline(12.0, 4000);
  std::vector<double> uh(4000);
  for (int j = 0; j < 4000; ++j) uh[static_cast<std::size_t>(j)] = (*k)[j] * std::exp(-(*k)[j] * (*k)[j]);
  uh.back() = 0.0;
  const Field f(k, uh);
  std::vector<double> xs;
  for (int i = 0; i <= 200; ++i) xs.push_back(-10.0 + 0.1 * i);
  const auto p = numgrid::fourier_quadrature(f, Branch::plus, xs);
  const auto m = numgrid::fourier_quadrature(f, Branch::minus, xs);
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cplx expect(0.0, xs[i] * std::exp(-xs[i] * xs[i] / 4.0) / (2.0 * std::sqrt(2.0)));
    err = std::max(err, std::abs(p[i] - m[i] - expect));
    ref = std::max(ref, std::abs(expect));
  }
  CHECK(err / ref < 1e-6);
}

TEST_CASE("fourier quadrature: zero, conjugation, linearity, truncation") {
  const auto k = Grid::halfline(10.0, 1000);
  std::vector<double> a(1000), b(1000), zero(1000, 0.0);
  for (int j = 0; j < 1000; ++j) {
    const double kk = (*k)[j];
    a[static_cast<std::size_t>(j)] = kk * std::exp(-kk * kk) * (1.0 - kk);
    b[static_cast<std::size_t>(j)] = kk * kk * std::exp(-2.0 * kk * kk);
  }
  const std::vector<double> xs{-33.0, -2.5, 0.0, 0.7, 12.0, 80.0};
  for (cplx v : numgrid::fourier_quadrature(Field(k, zero), Branch::plus, xs)) CHECK(v == cplx(0.0));

  const auto pa = numgrid::fourier_quadrature(Field(k, a), Branch::plus, xs);
  const auto ma = numgrid::fourier_quadrature(Field(k, a), Branch::minus, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(ma[i].real() == doctest::Approx(pa[i].real()).epsilon(1e-13));
    CHECK(ma[i].imag() == doctest::Approx(-pa[i].imag()).epsilon(1e-13));
  }

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double al = U(rng), be = U(rng);
    std::vector<double> c(1000);
    for (int j = 0; j < 1000; ++j) c[static_cast<std::size_t>(j)] = al * a[static_cast<std::size_t>(j)] + be * b[static_cast<std::size_t>(j)];
    const auto pc = numgrid::fourier_quadrature(Field(k, c), Branch::plus, xs);
    const auto pb = numgrid::fourier_quadrature(Field(k, b), Branch::plus, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(pc[i] - (al * pa[i] + be * pb[i])) < 1e-14);
  }

  std::vector<double> slow(1000);
  for (int j = 0; j < 1000; ++j) slow[static_cast<std::size_t>(j)] = std::exp(-0.1 * (*k)[j]);
  try {
    (void)numgrid::fourier_quadrature(Field(k, slow), Branch::plus, xs);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.tail_magnitude > 0.3);
  }
  CHECK_THROWS_AS(numgrid::fourier_quadrature(Field(Grid::periodic(10.0, 64), std::vector<double>(64)),
                                              Branch::plus, xs),
                  InvalidGridError);
}

TEST_CASE("forward transform of the Gaussian") {
  // (2pi)^{-1/2} int e^{-x^2/4} e^{-ikx} dx = sqrt 2 e^{-k^2}.
  const auto g = Grid::periodic(40.0, 2048);
  const auto u = numgrid::sample(g, gauss4);
  const std::vector<double> ks{0.0, 0.5, 1.3, 2.0};
  const auto t = numgrid::fourier_transform(u, ks);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CHECK(t[i].real() == doctest::Approx(std::sqrt(2.0) * std::exp(-ks[i] * ks[i])).epsilon(1e-10));
    CHECK(std::abs(t[i].imag()) < 1e-12);
  }
}

TEST_CASE("edge amplitude and boundary warning") {
  const auto g = Grid::periodic(40.0, 1024);
  const auto vg = numgrid::sample(g, gaussian::value);
  CHECK(numgrid::edge_amplitude(vg) < 1e-100);
  CHECK(!numgrid::boundary_warning(vg));
  auto wide = numgrid::sample(g, [](double x) { return std::exp(-std::abs(x) / 10.0); });
  CHECK(numgrid::edge_amplitude(wide) == doctest::Approx(std::exp(-3.8)).epsilon(0.02));
  CHECK(numgrid::boundary_warning(wide).has_value());
}

TEST_CASE("Gaussian closed forms") {
  CHECK(gaussian::value(0.0) == doctest::Approx(std::exp(0.5)));
  CHECK(gaussian::derivative(2.0) == doctest::Approx(-std::exp(-0.5)));
  CHECK(gaussian::antiderivative(0.0) == doctest::Approx(0.5 * gaussian::mass()));
  CHECK(gaussian::norm_squared() == doctest::Approx(std::exp(1.0) * std::sqrt(2.0 * M_PI)));
  const auto g = Grid::periodic(40.0, 4096);
  const auto vg = numgrid::sample(g, gaussian::value);
  CHECK(inner(vg, vg) == doctest::Approx(gaussian::norm_squared()).epsilon(1e-12));
}
