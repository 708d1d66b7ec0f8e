#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "logkdv/error.hpp"
#include "logkdv/spectrum.hpp"
#include "logkdv/tridiag_eigen.hpp"

using namespace logkdv;

namespace {

const std::vector<EigenMode>& default_modes() {
  static const auto modes = spectrum::solve_half_line(12.0, 4000, 10);
  return modes;
}

// Power series of the regular solution of -u'' + (4k^2 - 6) u = E u / k,
// u = k + a_2 k^2 + ..., from the recurrence
//   r (r - 1) a_r = -E a_{r-1} - 6 a_{r-2} + 4 a_{r-4}.
double series_origin(double E, double k, int order) {
  std::vector<double> a(static_cast<std::size_t>(order + 1), 0.0);
  a[1] = 1.0;
  for (int r = 2; r <= order; ++r) {
    const auto R = static_cast<std::size_t>(r);
    double t = E * a[R - 1] + 6.0 * a[R - 2];
    if (r >= 4) t -= 4.0 * a[R - 4];
    a[R] = -t / (r * (r - 1.0));
  }
  double s = 0.0;
  for (int r = order; r >= 1; --r) s = s * k + a[static_cast<std::size_t>(r)];
  return s * k;
}

// Large-k expansion u ~ k e^{-k^2} sum_j c_j k^{-j}, from
//   4 j c_j = -E c_{j-1} - (3 - j)(2 - j) c_{j-2}.
double series_tail(double E, double k, int order) {
  std::vector<double> c(static_cast<std::size_t>(order + 1), 0.0);
  c[0] = 1.0;
  double s = 1.0;
  for (int j = 1; j <= order; ++j) {
    const auto J = static_cast<std::size_t>(j);
    const double c2 = j >= 2 ? c[J - 2] : 0.0;
    c[J] = -(E * c[J - 1] + (3.0 - j) * (2.0 - j) * c2) / (4.0 * j);
    s += c[J] * std::pow(k, -j);
  }
  return s;
}

// max relative deviation of y from c * f over the index set, c least squares.
template <class F>
double fitted_deviation(const EigenMode& m, double lo, double hi, F&& f, bool divide_tail) {
  const Grid& k = *m.uhat.grid;
  double num = 0.0, den = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j < k.size(); ++j) {
    if (k[j] < lo - 1e-12 || k[j] > hi + 1e-12) continue;
    const double y = divide_tail ? m.uhat[j] / (k[j] * std::exp(-k[j] * k[j])) : m.uhat[j];
    const double g = f(k[j]);
    pts.emplace_back(y, g);
    num += g * y;
    den += g * g;
  }
  const double c = num / den;
  double worst = 0.0;
  for (auto [y, g] : pts) worst = std::max(worst, std::abs(y - c * g) / std::abs(y));
  return worst;
}

}  // namespace

TEST_CASE("tridiagonal eigensolver against a dense reference") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 30 + 10 * trial;
    std::vector<double> d(static_cast<std::size_t>(m)), e(static_cast<std::size_t>(m - 1));
    for (auto& x : d) x = U(rng);
    for (auto& x : e) x = U(rng);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) T(i, i) = d[static_cast<std::size_t>(i)];
    for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = e[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const auto got = tridiag_lowest(d, e, 6);
    for (int i = 0; i < 6; ++i) {
      CHECK(got.values[static_cast<std::size_t>(i)] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
      const auto& v = got.vectors[static_cast<std::size_t>(i)];
      const Eigen::VectorXd ref = es.eigenvectors().col(i);
      const double dot = Eigen::Map<const Eigen::VectorXd>(v.data(), m).dot(ref);
      CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(sturm_count(d, e, es.eigenvalues()(3) + 1e-9) == 4);
  }
}

TEST_CASE("half-line matrix spectrum against a dense reference") {
  // Assemble K^{1/2} T K^{1/2} independently and compare the low spectrum.
  const double kmax = 8.0;
  const int n = 400;
  const double h = kmax / n;
  const int m = n - 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const double ki = (i + 1) * h;
    A(i, i) = ki * (2.0 / (h * h) + 4.0 * ki * ki - 6.0);
    if (i + 1 < m) A(i, i + 1) = A(i + 1, i) = -std::sqrt(ki * (ki + h)) / (h * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const auto modes = spectrum::solve_half_line(kmax, n, 5);
  for (int i = 0; i < 5; ++i)
    CHECK(modes[static_cast<std::size_t>(i)].E == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-11));
}

TEST_CASE("low eigenvalues at default resolution") {
  const auto& modes = default_modes();
  CHECK(std::abs(modes[0].E) < 1e-4);
  CHECK(modes[1].E == doctest::Approx(5.4109).epsilon(0.01));
  CHECK(modes[2].E == doctest::Approx(12.3080).epsilon(0.01));
  for (const auto& m : modes) {
    CHECK(m.omega == m.E / 4.0);
    CHECK(m.branch == Branch::plus);
  }
}

TEST_CASE("mode 0 is k^{1/2} e^{-k^2}") {
  const auto& m = default_modes()[0];
  const Grid& k = *m.vhat.grid;
  std::vector<double> ref(static_cast<std::size_t>(k.size()));
  for (int j = 0; j < k.size(); ++j) ref[static_cast<std::size_t>(j)] = std::sqrt(k[j]) * std::exp(-k[j] * k[j]);
  std::vector<double> sq(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) sq[i] = ref[i] * ref[i];
  const double scale = std::sqrt(integrate(k, sq));
  std::vector<double> diff(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double r = ref[i] / scale;
    diff[i] = (m.vhat.values[i] - r) * (m.vhat.values[i] - r);
  }
  CHECK(std::sqrt(integrate(k, diff)) < 1e-3);
}

TEST_CASE("minus branch is the mirror of plus") {
  const auto minus = spectrum::solve_half_line(12.0, 4000, 3, Branch::minus);
  const auto& plus = default_modes();
  for (int i = 0; i < 3; ++i) {
    const auto I = static_cast<std::size_t>(i);
    CHECK(minus[I].E == -plus[I].E);
    CHECK(minus[I].branch == Branch::minus);
    CHECK(minus[I].uhat.values == plus[I].uhat.values);
  }
  CHECK(spectrum::reflect(plus[1]).E == -plus[1].E);
}

TEST_CASE("orthonormality, nodal counts and sign convention") {
  const auto& modes = default_modes();
  const Grid& k = *modes[0].vhat.grid;
  double defect = 0.0;
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = 0; b < modes.size(); ++b) {
      std::vector<double> p(static_cast<std::size_t>(k.size()));
      for (int j = 0; j < k.size(); ++j) p[static_cast<std::size_t>(j)] = modes[a].vhat[j] * modes[b].vhat[j];
      defect = std::max(defect, std::abs(integrate(k, p) - (a == b ? 1.0 : 0.0)));
    }
  CHECK(defect < 1e-6);
  for (const auto& m : modes) {
    CHECK(spectrum::nodal_count(m) == m.n);
    // uhat / k on the three smallest points: linear in k with slope -E/2
    // (second term of the series), extrapolating to a positive limit.
    const double h = k.spacing();
    const double r0 = m.uhat[0] / k[0], r1 = m.uhat[1] / k[1], r2 = m.uhat[2] / k[2];
    const double limit = 3.0 * r0 - 3.0 * r1 + r2;
    CHECK(limit > 0.0);
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(m.uhat[j] / k[j] - limit) <= std::max(1.0, m.E) * k[j] * limit);
    if (m.n > 0 && m.n <= 3) CHECK((r1 - r0) / (h * limit) == doctest::Approx(-m.E / 2.0).epsilon(0.05));
  }
}

TEST_CASE("second-order convergence of E1 under grid refinement") {
  const double e1 = spectrum::solve_half_line(12.0, 1000, 2)[1].E;
  const double e2 = spectrum::solve_half_line(12.0, 2000, 2)[1].E;
  const double e3 = spectrum::solve_half_line(12.0, 4000, 2)[1].E;
  CHECK((e2 - e1) / (e3 - e2) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Frobenius series values") {
  CHECK(spectrum::frobenius_u1(0.0, 0.2, 3) == doctest::Approx(0.192).epsilon(1e-14));
  CHECK(spectrum::frobenius_u1(2.0, 0.1, 3) == doctest::Approx(0.0893333333333333).epsilon(1e-14));
  CHECK(spectrum::frobenius_u1(7.0, 0.0, 3) == 0.0);
  CHECK(spectrum::frobenius_u1(2.0, 0.1, 2) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK_THROWS_AS(spectrum::frobenius_u1(1.0, 0.1, 4), UnsupportedOrderError);
  CHECK_THROWS_AS(spectrum::frobenius_u1(1.0, 0.1, 1), InvalidArgument);
  CHECK_THROWS_AS(spectrum::frobenius_u1(1.0, 0.6, 3), InvalidArgument);
  // The three printed terms are the start of the recurrence series.
  CHECK(spectrum::frobenius_u1(5.0, 0.01, 3) == doctest::Approx(series_origin(5.0, 0.01, 3)).epsilon(1e-14));
}

TEST_CASE("near-origin agreement with the three-term series, mode 1") {
  const auto& m = default_modes()[1];
  const double dev = fitted_deviation(m, 0.0, 0.1, [&](double k) { return spectrum::frobenius_u1(m.E, k, 3); }, false);
  CHECK(dev < 1e-2);
}

// Measured 1.0e-2 (mode 2) and 1.3e-1 (mode 3), unchanged at n_k = 8000: the
// omitted k^4 coefficient (4E - E^3/12)/12 is -8.8 and -54 for these modes.
TEST_CASE("near-origin agreement with the three-term series, modes 2-3" * doctest::should_fail()) {
  for (int n : {2, 3}) {
    const auto& m = default_modes()[static_cast<std::size_t>(n)];
    const double dev = fitted_deviation(m, 0.0, 0.1, [&](double k) { return spectrum::frobenius_u1(m.E, k, 3); }, false);
    CHECK(dev < 1e-2);
  }
}

TEST_CASE("near-origin agreement with the full recurrence series") {
  for (int n : {1, 2, 3}) {
    const auto& m = default_modes()[static_cast<std::size_t>(n)];
    CHECK(fitted_deviation(m, 0.0, 0.1, [&](double k) { return series_origin(m.E, k, 10); }, false) < 1e-4);
  }
}

// Measured 0.19 / 1.0 / 1.3 for modes 1-3: on [2, 3] the next term E^2/(32 k^2)
// of the asymptotic series is itself 23% (mode 1) and larger for higher E.
TEST_CASE("two-term tail 1 - E/4k on [2, 3]" * doctest::should_fail()) {
  for (int n : {1, 2, 3}) {
    const auto& m = default_modes()[static_cast<std::size_t>(n)];
    CHECK(fitted_deviation(m, 2.0, 3.0, [&](double k) { return 1.0 - m.E / (4.0 * k); }, true) < 0.05);
  }
}

TEST_CASE("tail agrees with the higher-order asymptotic series") {
  for (int n : {1, 2, 3}) {
    const auto& m = default_modes()[static_cast<std::size_t>(n)];
    CHECK(fitted_deviation(m, 3.5, 4.5, [&](double k) { return series_tail(m.E, k, 8); }, true) < 1e-3);
  }
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(spectrum::solve_half_line(7.5, 4000, 3), InvalidArgument);
  CHECK_THROWS_AS(spectrum::solve_half_line(12.0, 4000, 65), InvalidArgument);
  CHECK_THROWS_AS(spectrum::solve_half_line(12.0, 4000, 0), InvalidArgument);
}

TEST_CASE("decay exponent fits") {
  std::vector<double> x;
  std::vector<cplx> pw, ga;
  for (int i = 0; i <= 400; ++i) {
    const double xi = 20.0 + 0.1 * i;
    x.push_back(xi);
    pw.emplace_back(1.0 / (1.0 + xi * xi), 0.0);
    ga.emplace_back(xi * std::exp(-xi * xi / 4.0), 0.0);
  }
  CHECK(spectrum::fit_decay_exponent(x, pw, {20.0, 60.0}, spectrum::Part::real).p == doctest::Approx(2.0).epsilon(0.025));
  // Gaussian: either below the floor or flagged super-algebraic.
  bool flagged = false;
  try {
    flagged = spectrum::fit_decay_exponent(x, ga, {20.0, 60.0}, spectrum::Part::real).super_algebraic;
  } catch (const DegenerateFitError&) {
    flagged = true;
  }
  CHECK(flagged);
  CHECK_THROWS_AS(spectrum::fit_decay_exponent(x, pw, {20.0, 60.0}, spectrum::Part::imag), DegenerateFitError);
  CHECK_THROWS_AS(spectrum::fit_decay_exponent(x, pw, {20.0, 21.0}, spectrum::Part::real), DegenerateFitError);
}

TEST_CASE("physical modes: algebraic tails and conjugate mirror") {
  auto modes = spectrum::solve_half_line(12.0, 4000, 3);
  std::vector<double> x;
  for (int i = 0; i <= 400; ++i) x.push_back(20.0 + 0.1 * i);
  for (int n : {1, 2}) {
    auto& m = modes[static_cast<std::size_t>(n)];
    const auto u = spectrum::mode_to_physical(m, x);
    CHECK(m.u_physical.size() == x.size());
    const double pr = spectrum::fit_decay_exponent(x, u, {20.0, 60.0}, spectrum::Part::real).p;
    const double pi = spectrum::fit_decay_exponent(x, u, {20.0, 60.0}, spectrum::Part::imag).p;
    CHECK(pr >= 1.7);
    CHECK(pr <= 2.3);
    CHECK(pi >= 2.6);
    CHECK(pi <= 3.4);
    CHECK(std::abs(u[0].real()) > 1e-5);
    auto mirror = spectrum::reflect(m);
    const auto v = spectrum::mode_to_physical(mirror, x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(v[i] - std::conj(u[i])) < 1e-15);
  }
}

TEST_CASE("glued mode 0 is proportional to x e^{-x^2/4}") {
  auto modes = spectrum::solve_half_line(12.0, 8000, 1);
  std::vector<double> x;
  for (int i = 0; i <= 200; ++i) x.push_back(-10.0 + 0.1 * i);
  auto plus = modes[0];
  auto minus = spectrum::reflect(plus);
  const auto p = spectrum::mode_to_physical(plus, x);
  const auto q = spectrum::mode_to_physical(minus, x);
  double num = 0.0, den = 0.0;
  std::vector<double> g(x.size()), f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = (p[i] - q[i]).imag();
    f[i] = x[i] * std::exp(-x[i] * x[i] / 4.0);
    num += f[i] * g[i];
    den += f[i] * f[i];
  }
  const double c = num / den;
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    err = std::max(err, std::abs(g[i] - c * f[i]));
    ref = std::max(ref, std::abs(c * f[i]));
    CHECK(std::abs((p[i] - q[i]).real()) < 1e-12);
  }
  CHECK(err / ref < 1e-6);
}
