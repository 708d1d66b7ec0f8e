#include "logkdv/banded_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logkdv/error.hpp"

namespace logkdv {

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(static_cast<std::size_t>(2 * kl + ku + 1)) {
  if (n <= 0 || kl < 0 || ku < 0) throw InvalidArgument("BandedLU: bad dimensions");
  a_.assign(static_cast<std::size_t>(n) * width_, 0.0);
  pivots_.assign(static_cast<std::size_t>(n), 0);
}

BandedLU::BandedLU(const BandOperator& a)
    : BandedLU(a.size(), a.lower_bandwidth(), a.upper_bandwidth()) {
  if (a.cyclic()) throw InvalidArgument("BandedLU expects a non-cyclic operator");
  for (std::size_t b = 0; b < a.offsets().size(); ++b) {
    const int d = a.offsets()[b];
    for (int i = 0; i < n_; ++i) {
      const int j = i + d;
      if (j >= 0 && j < n_) set(i, j, a.bands()[b][static_cast<std::size_t>(i)]);
    }
  }
}

void BandedLU::set(int i, int j, double v) {
  if (j - i < -kl_ || j - i > ku_) throw InvalidArgument("BandedLU::set outside band");
  ref(i, j) = v;
  factored_ = false;
}

void BandedLU::factor() {
  const int reach = ku_ + kl_;
  for (int k = 0; k < n_; ++k) {
    const int last_row = std::min(n_ - 1, k + kl_);
    const int last_col = std::min(n_ - 1, k + reach);
    int p = k;
    double best = std::abs(get(k, k));
    for (int i = k + 1; i <= last_row; ++i) {
      if (std::abs(get(i, k)) > best) {
        best = std::abs(get(i, k));
        p = i;
      }
    }
    if (best == 0.0) throw SolverError("BandedLU: zero pivot in column " + std::to_string(k));
    pivots_[static_cast<std::size_t>(k)] = p;
    if (p != k)
      for (int c = k; c <= last_col; ++c) std::swap(ref(k, c), ref(p, c));
    const double piv = get(k, k);
    for (int i = k + 1; i <= last_row; ++i) {
      const double m = get(i, k) / piv;
      ref(i, k) = m;
      if (m == 0.0) continue;
      for (int c = k + 1; c <= last_col; ++c) ref(i, c) -= m * get(k, c);
    }
  }
  factored_ = true;
}

void BandedLU::solve_in_place(std::span<double> b) const {
  if (!factored_) throw SolverError("BandedLU::solve called before factor()");
  if (static_cast<int>(b.size()) != n_) throw InvalidArgument("BandedLU::solve: size mismatch");
  const int reach = ku_ + kl_;
  for (int k = 0; k < n_; ++k) {
    const int p = pivots_[static_cast<std::size_t>(k)];
    if (p != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
    const double bk = b[static_cast<std::size_t>(k)];
    const int last_row = std::min(n_ - 1, k + kl_);
    for (int i = k + 1; i <= last_row; ++i) b[static_cast<std::size_t>(i)] -= get(i, k) * bk;
  }
  for (int k = n_ - 1; k >= 0; --k) {
    double s = b[static_cast<std::size_t>(k)];
    const int last_col = std::min(n_ - 1, k + reach);
    for (int c = k + 1; c <= last_col; ++c) s -= get(k, c) * b[static_cast<std::size_t>(c)];
    b[static_cast<std::size_t>(k)] = s / get(k, k);
  }
}

namespace {

void dense_lu(std::vector<double>& a, std::vector<int>& piv, int n) {
  piv.resize(static_cast<std::size_t>(n));
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (at(p, k) == 0.0) throw SolverError("cyclic correction: singular capacitance matrix");
    piv[static_cast<std::size_t>(k)] = p;
    if (p != k)
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
    for (int i = k + 1; i < n; ++i) {
      at(i, k) /= at(k, k);
      for (int c = k + 1; c < n; ++c) at(i, c) -= at(i, k) * at(k, c);
    }
  }
}

void dense_solve(const std::vector<double>& a, const std::vector<int>& piv, int n,
                 std::vector<double>& b) {
  auto at = [&](int i, int j) {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  // Whole rows were interchanged during factorization, multipliers included,
  // so the permutation is applied in full before the forward sweep.
  for (int k = 0; k < n; ++k)
    std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv[static_cast<std::size_t>(k)])]);
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) b[static_cast<std::size_t>(i)] -= at(i, k) * b[static_cast<std::size_t>(k)];
  for (int k = n - 1; k >= 0; --k) {
    double s = b[static_cast<std::size_t>(k)];
    for (int c = k + 1; c < n; ++c) s -= at(k, c) * b[static_cast<std::size_t>(c)];
    b[static_cast<std::size_t>(k)] = s / at(k, k);
  }
}

}  // namespace

CyclicBandedSolver::CyclicBandedSolver(const BandOperator& a) : n_(a.size()), a_(a) {
  const int kl = a.lower_bandwidth();
  const int ku = a.upper_bandwidth();
  if (n_ < 2 * (kl + ku) + 1)
    throw InvalidArgument("cyclic solver needs n > 2 (kl + ku)");

  banded_ = BandedLU(n_, kl, ku);
  std::vector<std::vector<std::pair<int, double>>> corner(static_cast<std::size_t>(n_));
  for (std::size_t b = 0; b < a.offsets().size(); ++b) {
    const int d = a.offsets()[b];
    for (int i = 0; i < n_; ++i) {
      const double v = a.bands()[b][static_cast<std::size_t>(i)];
      const int j = i + d;
      if (j >= 0 && j < n_) {
        banded_.set(i, j, v);
      } else if (a.cyclic() && v != 0.0) {
        corner[static_cast<std::size_t>(i)].emplace_back((j % n_ + n_) % n_, v);
      }
    }
  }
  banded_.factor();

  for (int i = 0; i < n_; ++i) {
    if (corner[static_cast<std::size_t>(i)].empty()) continue;
    rows_.push_back(i);
    vt_.push_back(std::move(corner[static_cast<std::size_t>(i)]));
  }
  const int r = static_cast<int>(rows_.size());
  for (int s = 0; s < r; ++s) {
    std::vector<double> e(static_cast<std::size_t>(n_), 0.0);
    e[static_cast<std::size_t>(rows_[static_cast<std::size_t>(s)])] = 1.0;
    banded_.solve_in_place(e);
    z_.push_back(std::move(e));
  }
  cap_.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(r), 0.0);
  for (int p = 0; p < r; ++p)
    for (int s = 0; s < r; ++s) {
      double v = (p == s) ? 1.0 : 0.0;
      for (auto [col, val] : vt_[static_cast<std::size_t>(p)])
        v += val * z_[static_cast<std::size_t>(s)][static_cast<std::size_t>(col)];
      cap_[static_cast<std::size_t>(p) * static_cast<std::size_t>(r) + static_cast<std::size_t>(s)] = v;
    }
  if (r > 0) dense_lu(cap_, cap_piv_, r);
}

std::vector<double> CyclicBandedSolver::solve(std::span<const double> rhs) const {
  if (static_cast<int>(rhs.size()) != n_) throw InvalidArgument("cyclic solve: size mismatch");
  std::vector<double> y(rhs.begin(), rhs.end());
  banded_.solve_in_place(y);
  const int r = static_cast<int>(rows_.size());
  if (r == 0) return y;
  std::vector<double> w(static_cast<std::size_t>(r), 0.0);
  for (int p = 0; p < r; ++p)
    for (auto [col, val] : vt_[static_cast<std::size_t>(p)])
      w[static_cast<std::size_t>(p)] += val * y[static_cast<std::size_t>(col)];
  dense_solve(cap_, cap_piv_, r, w);
  for (int s = 0; s < r; ++s) {
    const double q = w[static_cast<std::size_t>(s)];
    const auto& z = z_[static_cast<std::size_t>(s)];
    for (int i = 0; i < n_; ++i) y[static_cast<std::size_t>(i)] -= q * z[static_cast<std::size_t>(i)];
  }
  return y;
}

double CyclicBandedSolver::residual(std::span<const double> x, std::span<const double> b) const {
  const std::vector<double> ax = a_.apply(x);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    num += (ax[i] - b[i]) * (ax[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace logkdv
