#include "logkdv/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "logkdv/error.hpp"

namespace logkdv {

int sturm_count(std::span<const double> d, std::span<const double> e, double x) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (std::abs(q) < tiny) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

namespace {

// Solve (T - lambda I) x = b with partial pivoting; the factorization of a
// shifted tridiagonal fills one extra superdiagonal.
void shifted_solve(std::span<const double> d, std::span<const double> e, double lambda,
                   std::vector<double>& b) {
  const std::size_t m = d.size();
  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(1.0, std::abs(lambda) + *std::max_element(d.begin(), d.end()));
  std::vector<double> diag(m), up1(m, 0.0), up2(m, 0.0), low(m, 0.0);
  std::vector<char> swapped(m, 0);
  for (std::size_t i = 0; i < m; ++i) diag[i] = d[i] - lambda;
  for (std::size_t i = 0; i + 1 < m; ++i) up1[i] = e[i];

  // Row i currently holds (diag[i], up1[i], up2[i]) at columns i, i+1, i+2.
  double sub = m > 1 ? e[0] : 0.0;  // subdiagonal entry of row i+1
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double nd = sub, nu1 = diag[i + 1], nu2 = i + 2 < m ? up1[i + 1] : 0.0;
    if (std::abs(nd) > std::abs(diag[i])) {
      swapped[i] = 1;
      std::swap(diag[i], nd);
      std::swap(up1[i], nu1);
      std::swap(up2[i], nu2);
    }
    if (diag[i] == 0.0) diag[i] = tiny;
    const double mult = nd / diag[i];
    low[i] = mult;
    diag[i + 1] = nu1 - mult * up1[i];
    up1[i + 1] = nu2 - mult * up2[i];
    sub = i + 2 < m ? e[i + 1] : 0.0;
  }
  if (diag[m - 1] == 0.0) diag[m - 1] = tiny;

  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= low[i] * b[i];
  }
  for (std::size_t ii = m; ii-- > 0;) {
    double s = b[ii];
    if (ii + 1 < m) s -= up1[ii] * b[ii + 1];
    if (ii + 2 < m) s -= up2[ii] * b[ii + 2];
    b[ii] = s / diag[ii];
  }
}

double norm2(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

TridiagEigenpairs tridiag_lowest(std::span<const double> d, std::span<const double> e,
                                 int count) {
  const std::size_t m = d.size();
  if (m == 0 || e.size() + 1 != m) throw InvalidArgument("tridiag_lowest: inconsistent sizes");
  if (count < 1 || static_cast<std::size_t>(count) > m)
    throw InvalidArgument("tridiag_lowest: bad eigenpair count");

  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < m; ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < m ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double eps = std::numeric_limits<double>::epsilon();

  TridiagEigenpairs out;
  for (int j = 0; j < count; ++j) {
    double a = lo, b = hi;
    int it = 0;
    while (b - a > 2.0 * eps * (std::abs(a) + std::abs(b)) + 4.0 * eps * eps * scale) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(d, e, mid) > j) b = mid;
      else a = mid;
      if (++it > 2000) throw ConvergenceError("bisection did not converge", it);
    }
    out.values.push_back(0.5 * (a + b));
  }

  // Inverse iteration. A deterministic, non-symmetric start vector.
  constexpr int kMaxIter = 8;
  for (int j = 0; j < count; ++j) {
    const double lambda = out.values[static_cast<std::size_t>(j)];
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + j);
    double res = 0.0;
    int it = 0;
    for (; it < kMaxIter; ++it) {
      shifted_solve(d, e, lambda, v);
      // Keep well separated from eigenvectors already found (clusters only
      // matter at round-off level, a full sweep is cheap for small counts).
      for (int p = 0; p < j; ++p) {
        const auto& q = out.vectors[static_cast<std::size_t>(p)];
        const double c = std::inner_product(v.begin(), v.end(), q.begin(), 0.0);
        for (std::size_t i = 0; i < m; ++i) v[i] -= c * q[i];
      }
      const double nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) throw ConvergenceError("inverse iteration broke down", it + 1);
      for (double& x : v) x /= nv;
      // Residual ||T v - lambda v||.
      res = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double r = (d[i] - lambda) * v[i];
        if (i > 0) r += e[i - 1] * v[i - 1];
        if (i + 1 < m) r += e[i] * v[i + 1];
        res += r * r;
      }
      res = std::sqrt(res);
      if (it >= 1 && res < 1e3 * eps * scale) break;
    }
    if (res >= 1e3 * eps * scale)
      throw ConvergenceError("inverse iteration residual " + std::to_string(res), it);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace logkdv
