// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear-algebra kernels and Gaussian sampling shared by the
// channel, signal, detection and estimation layers.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace jamsense {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

using Rng = std::mt19937_64;

/// Thrown when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical routine cannot produce a trustworthy result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues below this fraction of the largest one count as zero.
inline constexpr double kRankCutoff = 1e-10;

/// Relative Hermitian-symmetry tolerance accepted on construction.
inline constexpr double kHermitianTolerance = 1e-10;

/// A square complex matrix known to equal its conjugate transpose.
///
/// Construction checks ||A - A^H||_F <= tol * ||A||_F and then stores the
/// exactly symmetrized matrix (A + A^H) / 2, so downstream code can rely on
/// exact symmetry.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix m, double tol = kHermitianTolerance);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(Index i, Index j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix conjugate() const;
  HermitianMatrix scaled(double s) const;

 private:
  CMatrix m_;
};

struct EigenDecomposition {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // column n pairs with eigenvalues[n]

  /// Number of eigenvalues above kRankCutoff * max(eigenvalue, 0).
  Index rank(double rel_cutoff = kRankCutoff) const;
  /// Eigenvalues counted by rank(), in descending order.
  RVector positive_eigenvalues(double rel_cutoff = kRankCutoff) const;
  CMatrix reconstruct() const;
};

EigenDecomposition hermitian_evd(const HermitianMatrix& a);

/// Principal square root of a positive semi-definite matrix.  Eigenvalues in
/// [-1e-10 * lambda_max, 0) are clamped to zero; anything more negative is
/// rejected as indefinite.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);
HermitianMatrix psd_sqrt(const EigenDecomposition& evd);

/// Solves A X = B for Hermitian positive definite A using a Cholesky
/// factorization.  If the factorization fails, a diagonal load of
/// delta * tr(A) / n is added, with delta starting at 1e-12 and doubling at
/// most six times.
CMatrix hpd_solve(const HermitianMatrix& a, const CMatrix& b);

/// Reusable Cholesky factor with the same jitter policy as hpd_solve.
class HpdFactorization {
 public:
  explicit HpdFactorization(const HermitianMatrix& a);

  CMatrix solve(const CMatrix& b) const;
  CVector solve(const CVector& b) const;
  /// Diagonal load actually applied (0 when none was needed).
  double jitter() const { return jitter_; }

 private:
  Eigen::LLT<CMatrix> llt_;
  double jitter_ = 0.0;
};

/// Vector of n i.i.d. CN(0, 1) entries: real and imaginary parts are
/// independent N(0, 1/2).
CVector standard_complex_normal(Index n, Rng& rng);

/// One draw from CN(0, cov), computed as psd_sqrt(cov) * z.
CVector sample_complex_gaussian(const HermitianMatrix& cov, Rng& rng);

/// Caches the square-root factor of a covariance for repeated sampling.
class ComplexGaussianSampler {
 public:
  ComplexGaussianSampler() = default;
  explicit ComplexGaussianSampler(const HermitianMatrix& cov);

  Index dim() const { return factor_.rows(); }
  CVector operator()(Rng& rng) const;
  const CMatrix& factor() const { return factor_; }

 private:
  CMatrix factor_;
};

/// Kronecker product: block (i, j) of the result equals a(i, j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Independent random stream for one Monte Carlo trial.  Distinct
/// (seed, scenario, sweep_index, trial) tuples feed distinct seed sequences.
Rng make_stream(std::uint64_t seed, std::uint64_t scenario, std::uint64_t sweep_index,
                std::uint64_t trial);

/// 10^(db / 10).
double db_to_linear(double db);
/// 10 log10(x); -inf for x == 0.
double linear_to_db(double x);

}  // namespace jamsense
