#pragma once

#include <span>
#include <vector>

#include "logkdv/band_operator.hpp"

namespace logkdv {

/// LU factorization with partial pivoting of a non-cyclic banded matrix.
///
/// Storage is row oriented: row i keeps columns [i - kl, i + ku + kl], the
/// extra kl upper diagonals absorb fill-in from row interchanges.
class BandedLU {
 public:
  BandedLU() = default;
  BandedLU(int n, int kl, int ku);
  explicit BandedLU(const BandOperator& a);

  void set(int i, int j, double v);
  /// Factor in place; throws SolverError on an exactly zero pivot.
  void factor();
  void solve_in_place(std::span<double> b) const;

  int size() const { return n_; }

 private:
  double& ref(int i, int j) { return a_[static_cast<std::size_t>(i) * width_ + static_cast<std::size_t>(j - i + kl_)]; }
  double get(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * width_ + static_cast<std::size_t>(j - i + kl_)];
  }

  int n_ = 0;
  int kl_ = 0;
  int ku_ = 0;
  std::size_t width_ = 0;
  std::vector<double> a_;
  std::vector<int> pivots_;
  bool factored_ = false;
};

/// Direct solver for a cyclic banded matrix A = B + U V^T: B is the banded
/// part without the wrap-around corners, factored once with BandedLU; the
/// corners are a rank-(kl+ku) correction handled by Woodbury's identity.
class CyclicBandedSolver {
 public:
  explicit CyclicBandedSolver(const BandOperator& a);

  std::vector<double> solve(std::span<const double> rhs) const;
  /// Relative residual ||A x - b|| / ||b|| of a candidate solution.
  double residual(std::span<const double> x, std::span<const double> b) const;

  int size() const { return n_; }

 private:
  int n_;
  BandOperator a_;
  BandedLU banded_;
  std::vector<int> rows_;                  // rows touched by the corners
  std::vector<std::vector<double>> z_;     // B^{-1} e_row for each row in rows_
  std::vector<std::vector<std::pair<int, double>>> vt_;  // corner entries per row
  std::vector<double> cap_;                // factored capacitance matrix (dense LU)
  std::vector<int> cap_piv_;
};

}  // namespace logkdv
