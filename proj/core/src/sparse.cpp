#include "eigdiag/sparse.hpp"

#include <algorithm>

#include "eigdiag/error.hpp"

namespace eigdiag {

SparseSymMatrix SparseSymMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  if (n < 0) throw Error(ErrorCode::InvalidParam, "negative matrix dimension");
  for (auto& t : triplets) {
    if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n)
      throw Error(ErrorCode::InvalidParam, "triplet index out of range");
    if (t.row < t.col) std::swap(t.row, t.col);
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row < b.row || (a.row == b.row && a.col < b.col);
  });
  SparseSymMatrix m;
  m.n_ = n;
  m.row_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  m.columns_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (std::size_t k = 0; k < triplets.size();) {
    const Triplet& t = triplets[k];
    double sum = 0.0;
    std::size_t j = k;
    for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j)
      sum += triplets[j].value;
    m.columns_.push_back(t.col);
    m.values_.push_back(sum);
    ++m.row_offsets_[static_cast<std::size_t>(t.row) + 1];
    k = j;
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) m.row_offsets_[i + 1] += m.row_offsets_[i];
  return m;
}

double SparseSymMatrix::operator()(int i, int j) const noexcept {
  if (i < j) std::swap(i, j);
  const auto begin = columns_.begin() + row_offsets_[static_cast<std::size_t>(i)];
  const auto end = columns_.begin() + row_offsets_[static_cast<std::size_t>(i) + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (int i = 0; i < n_; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    double acc = 0.0;
    for (int k = row_offsets_[ui]; k < row_offsets_[ui + 1]; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const auto j = static_cast<std::size_t>(columns_[uk]);
      const double v = values_[uk];
      acc += v * x[j];
      if (j != ui) y[j] += v * x[ui];
    }
    y[ui] += acc;
  }
}

std::vector<double> SparseSymMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(n_));
  multiply(x, y);
  return y;
}

double SparseSymMatrix::quadratic_form(std::span<const double> x) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (int k = row_offsets_[ui]; k < row_offsets_[ui + 1]; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const auto j = static_cast<std::size_t>(columns_[uk]);
      s += (j == ui ? 1.0 : 2.0) * values_[uk] * x[ui] * x[j];
    }
  }
  return s;
}

SparseSymMatrix SparseSymMatrix::restricted(std::span<const int> keep) const {
  std::vector<int> map(static_cast<std::size_t>(n_), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) map[static_cast<std::size_t>(keep[k])] = static_cast<int>(k);
  SparseSymMatrix m;
  m.n_ = static_cast<int>(keep.size());
  m.row_offsets_.assign(keep.size() + 1, 0);
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto i = static_cast<std::size_t>(keep[r]);
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const int c = map[static_cast<std::size_t>(columns_[static_cast<std::size_t>(k)])];
      if (c < 0) continue;
      m.columns_.push_back(c);
      m.values_.push_back(values_[static_cast<std::size_t>(k)]);
    }
    m.row_offsets_[r + 1] = static_cast<int>(m.columns_.size());
  }
  return m;
}

SparseSymMatrix SparseSymMatrix::combined(double a, const SparseSymMatrix& other, double b) const {
  if (other.n_ != n_ || other.row_offsets_ != row_offsets_ || other.columns_ != columns_)
    throw Error(ErrorCode::InvalidParam, "combined: sparsity patterns differ");
  SparseSymMatrix m = *this;
  for (std::size_t k = 0; k < m.values_.size(); ++k) m.values_[k] = a * values_[k] + b * other.values_[k];
  return m;
}

}  // namespace eigdiag
