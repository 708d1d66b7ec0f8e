#pragma once

#include <span>
#include <vector>

namespace logkdv {

struct TridiagEigenpairs {
  std::vector<double> values;                // increasing
  std::vector<std::vector<double>> vectors;  // unit 2-norm
};

/// Lowest `count` eigenpairs of the symmetric tridiagonal matrix with
/// diagonal `d` (length m) and off-diagonal `e` (length m - 1).
///
/// Eigenvalues by Sturm-sequence bisection, eigenvectors by inverse
/// iteration with a pivoted tridiagonal factorization, re-orthogonalized
/// against earlier vectors.
TridiagEigenpairs tridiag_lowest(std::span<const double> d, std::span<const double> e, int count);

/// Number of eigenvalues strictly below x.
int sturm_count(std::span<const double> d, std::span<const double> e, double x);

}  // namespace logkdv
