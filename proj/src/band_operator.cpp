#include "logkdv/band_operator.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "logkdv/error.hpp"

namespace logkdv {

BandOperator::BandOperator(int n, std::vector<int> offsets,
                           std::vector<std::vector<double>> bands, bool cyclic)
    : n_(n), offsets_(std::move(offsets)), bands_(std::move(bands)), cyclic_(cyclic) {
  if (n_ <= 0) throw InvalidArgument("band operator dimension must be positive");
  if (offsets_.size() != bands_.size())
    throw InvalidArgument("band operator: offsets/bands size mismatch");
  for (std::size_t b = 0; b < bands_.size(); ++b) {
    if (static_cast<int>(bands_[b].size()) != n_)
      throw InvalidArgument("band operator: band length must equal n");
    if (std::abs(offsets_[b]) >= n_)
      throw InvalidArgument("band operator: offset " + std::to_string(offsets_[b]) +
                            " exceeds dimension");
  }
  std::vector<int> sorted = offsets_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("band operator: duplicate offset");
  if (!cyclic_) {
    for (std::size_t b = 0; b < bands_.size(); ++b)
      for (int i = 0; i < n_; ++i) {
        const int j = i + offsets_[b];
        if ((j < 0 || j >= n_) && bands_[b][static_cast<std::size_t>(i)] != 0.0)
          throw InvalidArgument("non-cyclic band operator has an entry outside the matrix");
      }
  }
}

int BandOperator::lower_bandwidth() const {
  int kl = 0;
  for (int d : offsets_) kl = std::max(kl, -d);
  return kl;
}

int BandOperator::upper_bandwidth() const {
  int ku = 0;
  for (int d : offsets_) ku = std::max(ku, d);
  return ku;
}

int BandOperator::column(int i, int offset) const {
  int j = i + offset;
  if (cyclic_) {
    j %= n_;
    if (j < 0) j += n_;
  }
  return j;
}

double BandOperator::at(int i, int j) const {
  double v = 0.0;
  for (std::size_t b = 0; b < offsets_.size(); ++b)
    if (column(i, offsets_[b]) == j) v += bands_[b][static_cast<std::size_t>(i)];
  return v;
}

namespace {

template <class T>
std::vector<T> apply_impl(int n, const std::vector<int>& offsets,
                          const std::vector<std::vector<double>>& bands, bool cyclic,
                          std::span<const T> u) {
  if (static_cast<int>(u.size()) != n)
    throw InvalidArgument("band operator applied to vector of wrong length");
  std::vector<T> out(static_cast<std::size_t>(n), T{});
  for (std::size_t b = 0; b < offsets.size(); ++b) {
    const int d = offsets[b];
    const auto& band = bands[b];
    for (int i = 0; i < n; ++i) {
      int j = i + d;
      if (j < 0 || j >= n) {
        if (!cyclic) continue;
        j = (j % n + n) % n;
      }
      out[static_cast<std::size_t>(i)] +=
          band[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

}  // namespace

std::vector<double> BandOperator::apply(std::span<const double> u) const {
  return apply_impl<double>(n_, offsets_, bands_, cyclic_, u);
}

std::vector<cplx> BandOperator::apply(std::span<const cplx> u) const {
  return apply_impl<cplx>(n_, offsets_, bands_, cyclic_, u);
}

BandOperator BandOperator::transpose() const {
  std::vector<int> offs;
  std::vector<std::vector<double>> bands;
  for (std::size_t b = 0; b < offsets_.size(); ++b) {
    const int d = offsets_[b];
    std::vector<double> tb(static_cast<std::size_t>(n_), 0.0);
    // A^T(j, i) = A(i, j) with j = i + d, i.e. A^T(j, j - d).
    for (int i = 0; i < n_; ++i) {
      const int j = i + d;
      if (!cyclic_ && (j < 0 || j >= n_)) continue;
      tb[static_cast<std::size_t>(column(i, d))] = bands_[b][static_cast<std::size_t>(i)];
    }
    offs.push_back(-d);
    bands.push_back(std::move(tb));
  }
  return BandOperator(n_, std::move(offs), std::move(bands), cyclic_);
}

std::vector<double> BandOperator::dense() const {
  std::vector<double> a(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
  for (std::size_t b = 0; b < offsets_.size(); ++b)
    for (int i = 0; i < n_; ++i) {
      const int j = i + offsets_[b];
      if (!cyclic_ && (j < 0 || j >= n_)) continue;
      a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
        static_cast<std::size_t>(column(i, offsets_[b]))] += bands_[b][static_cast<std::size_t>(i)];
    }
  return a;
}

BandOperator BandOperator::shifted(double alpha, double beta) const {
  std::vector<int> offs = offsets_;
  std::vector<std::vector<double>> bands = bands_;
  for (auto& band : bands)
    for (double& v : band) v *= beta;
  auto it = std::find(offs.begin(), offs.end(), 0);
  if (it == offs.end()) {
    offs.push_back(0);
    bands.emplace_back(static_cast<std::size_t>(n_), alpha);
  } else {
    for (double& v : bands[static_cast<std::size_t>(it - offs.begin())]) v += alpha;
  }
  return BandOperator(n_, std::move(offs), std::move(bands), cyclic_);
}

BandOperator operator*(const BandOperator& a, const BandOperator& b) {
  if (a.n_ != b.n_) throw InvalidArgument("band product: dimension mismatch");
  if (a.cyclic_ != b.cyclic_) throw InvalidArgument("band product: mixed cyclic flags");
  const int n = a.n_;
  // (AB)(i, i + da + db) += A(i, i + da) * B(i + da, i + da + db)
  std::map<int, std::vector<double>> acc;
  for (std::size_t p = 0; p < a.offsets_.size(); ++p) {
    for (std::size_t q = 0; q < b.offsets_.size(); ++q) {
      const int da = a.offsets_[p];
      const int db = b.offsets_[q];
      int d = da + db;
      if (a.cyclic_ && d >= n) d -= n;
      if (a.cyclic_ && d <= -n) d += n;
      auto& band = acc.try_emplace(d, static_cast<std::size_t>(n), 0.0).first->second;
      for (int i = 0; i < n; ++i) {
        int mid = i + da;
        if (mid < 0 || mid >= n) {
          if (!a.cyclic_) continue;
          mid = (mid % n + n) % n;
        }
        const int j = mid + db;
        if (!a.cyclic_ && (j < 0 || j >= n)) continue;
        band[static_cast<std::size_t>(i)] += a.bands_[p][static_cast<std::size_t>(i)] *
                                             b.bands_[q][static_cast<std::size_t>(mid)];
      }
    }
  }
  std::vector<int> offs;
  std::vector<std::vector<double>> bands;
  for (auto& [d, band] : acc) {
    offs.push_back(d);
    bands.push_back(std::move(band));
  }
  return BandOperator(n, std::move(offs), std::move(bands), a.cyclic_);
}

}  // namespace logkdv
