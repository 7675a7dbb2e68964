#include "lanczos.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "eigdiag/error.hpp"
#include "eigdiag/shapegen.hpp"

namespace eigdiag::detail {

namespace {

double dotp(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

// Our lower-triangle CSR arrays are, read column-major, the upper triangle in
// CSC form; Eigen factors straight from that view.
struct CholeskyFactor::Impl {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Upper, Eigen::AMDOrdering<int>> llt;
};

CholeskyFactor::CholeskyFactor(const SparseSymMatrix& a) : impl_(std::make_unique<Impl>()) {
  const Eigen::Map<const Eigen::SparseMatrix<double>> upper(
      a.dim(), a.dim(), static_cast<Eigen::Index>(a.nonzeros()), a.row_offsets().data(),
      a.columns().data(), a.values().data());
  impl_->llt.compute(upper);
  if (impl_->llt.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "sparse Cholesky failed: matrix is not positive definite");
}

CholeskyFactor::~CholeskyFactor() = default;
CholeskyFactor::CholeskyFactor(CholeskyFactor&&) noexcept = default;
CholeskyFactor& CholeskyFactor::operator=(CholeskyFactor&&) noexcept = default;

void CholeskyFactor::solve(std::span<const double> rhs, std::span<double> x) const {
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::Map<Eigen::VectorXd> out(x.data(), static_cast<Eigen::Index>(x.size()));
  out = impl_->llt.solve(b);
}

LanczosResult shift_invert_lanczos(const SparseSymMatrix& mass, const CholeskyFactor& factor,
                                   std::span<const double> deflate, const LanczosOptions& opts) {
  const auto n = static_cast<std::size_t>(mass.dim());
  const bool deflating = !deflate.empty();
  const int cap = std::min<int>(opts.max_iter, static_cast<int>(n) - (deflating ? 1 : 0));
  if (cap < opts.nev) throw Error(ErrorCode::TooCoarse, "problem too small for the requested eigenpairs");

  std::vector<double> z, mz;
  if (deflating) {
    z.assign(deflate.begin(), deflate.end());
    mz = mass.multiply(z);
    const double s = 1.0 / std::sqrt(dotp(z, mz));
    for (std::size_t i = 0; i < n; ++i) {
      z[i] *= s;
      mz[i] *= s;
    }
  }
  auto remove_deflated = [&](std::vector<double>& w) {
    if (deflating) axpy(-dotp(w, mz), z, w);
  };

  Rng rng(opts.seed);
  std::vector<double> q(n);
  for (double& v : q) v = 0.5 + rng.uniform01();
  remove_deflated(q);
  std::vector<double> mq = mass.multiply(q);
  {
    const double s = 1.0 / std::sqrt(dotp(q, mq));
    for (std::size_t i = 0; i < n; ++i) {
      q[i] *= s;
      mq[i] *= s;
    }
  }

  std::vector<std::vector<double>> Q, MQ;
  std::vector<double> alpha, beta;
  LanczosResult result;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  std::vector<double> w(n);

  for (int j = 0; j < cap; ++j) {
    Q.push_back(std::move(q));
    MQ.push_back(std::move(mq));
    factor.solve(MQ.back(), w);
    alpha.push_back(dotp(w, MQ.back()));
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < Q.size(); ++i) axpy(-dotp(w, MQ[i]), Q[i], w);
      remove_deflated(w);
    }
    std::vector<double> mw = mass.multiply(w);
    const double b = std::sqrt(std::max(0.0, dotp(w, mw)));
    beta.push_back(b);

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index k = 0; k < m; ++k) diag(k) = alpha[static_cast<std::size_t>(k)];
    for (Eigen::Index k = 0; k + 1 < m; ++k) sub(k) = beta[static_cast<std::size_t>(k)];
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    const int have = static_cast<int>(m);
    const int want = std::min(opts.nev, have);
    const double theta_max = tri.eigenvalues()(m - 1);
    bool done = have >= opts.nev;
    for (int k = 0; k < want && done; ++k) {
      const Eigen::Index col = m - 1 - k;
      const double est = b * std::abs(tri.eigenvectors()(m - 1, col));
      done = est <= opts.tol * std::abs(tri.eigenvalues()(col));
    }
    const bool invariant = b <= 1e-14 * std::abs(theta_max);
    result.iterations = j + 1;
    if ((done || invariant || j + 1 == cap) && have >= opts.nev) {
      result.converged = done || invariant;
      for (int k = 0; k < want; ++k) {
        const Eigen::Index col = m - 1 - k;
        RitzPair p;
        p.theta = tri.eigenvalues()(col);
        p.estimate = b * std::abs(tri.eigenvectors()(m - 1, col));
        p.vector.assign(n, 0.0);
        for (Eigen::Index i = 0; i < m; ++i)
          axpy(tri.eigenvectors()(i, col), Q[static_cast<std::size_t>(i)], p.vector);
        result.pairs.push_back(std::move(p));
      }
      return result;
    }
    q.resize(n);
    mq.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = w[i] / b;
      mq[i] = mw[i] / b;
    }
  }
  return result;
}

}  // namespace eigdiag::detail
