// SPDX-License-Identifier: Apache-2.0

#include "jamsense/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jamsense {

HermitianMatrix::HermitianMatrix(CMatrix m, double tol) {
  if (m.rows() != m.cols()) {
    throw ValidationError("HermitianMatrix: matrix is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
  }
  const double scale = m.norm();
  const double asym = (m - m.adjoint()).norm();
  if (asym > tol * scale) {
    throw ValidationError("HermitianMatrix: ||A - A^H||_F = " + std::to_string(asym) +
                          " exceeds tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::zero(Index n) { return HermitianMatrix(CMatrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::conjugate() const { return HermitianMatrix(m_.conjugate()); }

HermitianMatrix HermitianMatrix::scaled(double s) const { return HermitianMatrix(s * m_); }

Index EigenDecomposition::rank(double rel_cutoff) const {
  if (eigenvalues.size() == 0) return 0;
  const double top = eigenvalues(0);
  if (!(top > 0.0)) return 0;
  Index r = 0;
  while (r < eigenvalues.size() && eigenvalues(r) > rel_cutoff * top) ++r;
  return r;
}

RVector EigenDecomposition::positive_eigenvalues(double rel_cutoff) const {
  return eigenvalues.head(rank(rel_cutoff));
}

CMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition hermitian_evd(const HermitianMatrix& a) {
  EigenDecomposition out;
  const Index n = a.dim();
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_evd: eigensolver did not converge");
  }
  // Eigen returns ascending order; reverse so index 0 holds the largest.
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

HermitianMatrix psd_sqrt(const EigenDecomposition& evd) {
  const Index n = evd.eigenvalues.size();
  if (n == 0) return HermitianMatrix(CMatrix(0, 0));
  const double top = std::max(evd.eigenvalues(0), 0.0);
  RVector root(n);
  for (Index i = 0; i < n; ++i) {
    const double lam = evd.eigenvalues(i);
    if (lam < -kRankCutoff * top || (top == 0.0 && lam < 0.0)) {
      throw ValidationError("psd_sqrt: matrix is indefinite (eigenvalue " + std::to_string(lam) +
                            ")");
    }
    root(i) = std::sqrt(std::max(lam, 0.0));
  }
  CMatrix s = evd.eigenvectors * root.cast<cplx>().asDiagonal() * evd.eigenvectors.adjoint();
  return HermitianMatrix(std::move(s), 1e-8);
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) { return psd_sqrt(hermitian_evd(a)); }

HpdFactorization::HpdFactorization(const HermitianMatrix& a) {
  const Index n = a.dim();
  llt_.compute(a.matrix());
  if (llt_.info() == Eigen::Success) return;

  const double base = n > 0 ? std::abs(a.trace()) / static_cast<double>(n) : 0.0;
  double delta = 1e-12;
  for (int attempt = 0; attempt <= 6; ++attempt, delta *= 2.0) {
    jitter_ = delta * base;
    CMatrix loaded = a.matrix();
    loaded.diagonal().array() += jitter_;
    llt_.compute(loaded);
    if (llt_.info() == Eigen::Success) return;
  }
  throw NumericalError("hpd_solve: matrix is not positive definite after maximum jitter");
}

CMatrix HpdFactorization::solve(const CMatrix& b) const { return llt_.solve(b); }

CVector HpdFactorization::solve(const CVector& b) const { return llt_.solve(b); }

CMatrix hpd_solve(const HermitianMatrix& a, const CMatrix& b) {
  if (b.rows() != a.dim()) {
    throw ValidationError("hpd_solve: right-hand side has " + std::to_string(b.rows()) +
                          " rows, expected " + std::to_string(a.dim()));
  }
  return HpdFactorization(a).solve(b);
}

CVector standard_complex_normal(Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector z(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    z(i) = cplx(re, im);
  }
  return z;
}

ComplexGaussianSampler::ComplexGaussianSampler(const HermitianMatrix& cov)
    : factor_(psd_sqrt(cov).matrix()) {}

CVector ComplexGaussianSampler::operator()(Rng& rng) const {
  return factor_ * standard_complex_normal(factor_.cols(), rng);
}

CVector sample_complex_gaussian(const HermitianMatrix& cov, Rng& rng) {
  return ComplexGaussianSampler(cov)(rng);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Rng make_stream(std::uint64_t seed, std::uint64_t scenario, std::uint64_t sweep_index,
                std::uint64_t trial) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed),        hi(seed),        lo(scenario), hi(scenario),
                    lo(sweep_index), hi(sweep_index), lo(trial),    hi(trial)};
  return Rng(seq);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(x);
}

}  // namespace jamsense
