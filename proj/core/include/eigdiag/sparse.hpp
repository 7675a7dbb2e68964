#pragma once

#include <span>
#include <vector>

namespace eigdiag {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Symmetric sparse matrix holding its lower triangle in compressed rows:
/// row i owns the entries (i, j) with j <= i, columns ascending.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  /// Duplicates are summed; (i, j) with i < j is folded onto (j, i).
  static SparseSymMatrix from_triplets(int n, std::vector<Triplet> triplets);

  int dim() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }
  std::span<const int> row_offsets() const noexcept { return row_offsets_; }
  std::span<const int> columns() const noexcept { return columns_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry lookup (either triangle); zero when not stored.
  double operator()(int i, int j) const noexcept;

  /// y = A x using both triangles.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;

  /// Principal submatrix on the given (ascending) indices.
  SparseSymMatrix restricted(std::span<const int> keep) const;

  /// a * this + b * other; both matrices must share one sparsity pattern.
  SparseSymMatrix combined(double a, const SparseSymMatrix& other, double b) const;

 private:
  int n_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> columns_;
  std::vector<double> values_;
};

}  // namespace eigdiag
