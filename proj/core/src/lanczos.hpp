#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "eigdiag/sparse.hpp"

namespace eigdiag::detail {

/// Cholesky factor of a sparse SPD matrix (AMD fill-reducing ordering).
class CholeskyFactor {
 public:
  explicit CholeskyFactor(const SparseSymMatrix& a);
  ~CholeskyFactor();
  CholeskyFactor(CholeskyFactor&&) noexcept;
  CholeskyFactor& operator=(CholeskyFactor&&) noexcept;

  void solve(std::span<const double> rhs, std::span<double> x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct LanczosOptions {
  int nev = 1;
  double tol = 1e-10;
  int max_iter = 500;
  std::uint64_t seed = 0x5eed;
};

struct RitzPair {
  double theta = 0.0;  // eigenvalue of (A^-1 M)
  double estimate = 0.0;
  std::vector<double> vector;  // M-normalized
};

struct LanczosResult {
  std::vector<RitzPair> pairs;  // theta descending
  int iterations = 0;
  bool converged = false;
};

/// Lanczos on the operator x -> A^-1 M x, self-adjoint in the M inner product,
/// with full reorthogonalization. Every Lanczos vector is kept M-orthogonal to
/// `deflate` when it is non-empty.
LanczosResult shift_invert_lanczos(const SparseSymMatrix& mass, const CholeskyFactor& factor,
                                   std::span<const double> deflate, const LanczosOptions& opts);

}  // namespace eigdiag::detail
