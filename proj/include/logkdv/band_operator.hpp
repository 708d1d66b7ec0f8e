#pragma once

#include <span>
#include <vector>

#include "logkdv/grid.hpp"

namespace logkdv {

/// Real banded matrix, optionally cyclic.
///
/// Diagonal `offsets[b]` holds `bands[b][i] = A(i, i + offsets[b])`, row
/// indexed. For a cyclic operator the column index wraps modulo n; for a
/// non-cyclic one entries whose column falls outside [0, n) must be zero.
class BandOperator {
 public:
  BandOperator(int n, std::vector<int> offsets, std::vector<std::vector<double>> bands,
               bool cyclic);

  int size() const { return n_; }
  bool cyclic() const { return cyclic_; }
  const std::vector<int>& offsets() const { return offsets_; }
  const std::vector<std::vector<double>>& bands() const { return bands_; }
  int lower_bandwidth() const;
  int upper_bandwidth() const;

  /// Entry A(i, j); zero outside the stored diagonals.
  double at(int i, int j) const;

  std::vector<double> apply(std::span<const double> u) const;
  std::vector<cplx> apply(std::span<const cplx> u) const;

  BandOperator transpose() const;
  /// Row-major dense copy, for small-n checks.
  std::vector<double> dense() const;

  /// alpha * I + beta * this.
  BandOperator shifted(double alpha, double beta) const;

  friend BandOperator operator*(const BandOperator& a, const BandOperator& b);

 private:
  int column(int i, int offset) const;

  int n_;
  std::vector<int> offsets_;
  std::vector<std::vector<double>> bands_;
  bool cyclic_;
};

}  // namespace logkdv
