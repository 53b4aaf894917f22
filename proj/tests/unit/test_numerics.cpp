// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "jamsense/numerics.hpp"

using namespace jamsense;
using jamsense::testing::max_abs;
using jamsense::testing::random_psd;

TEST_CASE("HermitianMatrix rejects non-square and asymmetric input") {
  CHECK_THROWS_AS(HermitianMatrix(CMatrix::Zero(2, 3)), ValidationError);
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = cplx(1.0, 0.0);
  CHECK_THROWS_AS(HermitianMatrix{a}, ValidationError);
}

TEST_CASE("HermitianMatrix symmetrizes within tolerance") {
  CMatrix a(2, 2);
  a << cplx(2, 0), cplx(1, 1), cplx(1, -1 + 1e-13), cplx(3, 0);
  const HermitianMatrix h(a);
  CHECK(max_abs(h.matrix() - h.matrix().adjoint()) == 0.0);
  CHECK(h.trace() == doctest::Approx(5.0));
}

TEST_CASE("eigendecomposition is descending and reconstructs") {
  Rng rng(3);
  const HermitianMatrix a = random_psd(6, 4, rng);
  const EigenDecomposition e = hermitian_evd(a);
  for (Index i = 1; i < e.eigenvalues.size(); ++i) {
    CHECK(e.eigenvalues(i - 1) >= e.eigenvalues(i));
  }
  CHECK(e.rank() == 4);
  CHECK(max_abs(e.reconstruct() - a.matrix()) < 1e-10 * a.frobenius_norm());
}

TEST_CASE("psd_sqrt squares back and rejects indefinite matrices") {
  Rng rng(4);
  const HermitianMatrix a = random_psd(5, 3, rng);
  const CMatrix s = psd_sqrt(a).matrix();
  CHECK(max_abs(s * s - a.matrix()) < 1e-9 * a.frobenius_norm());

  CMatrix d = CMatrix::Identity(2, 2);
  d(1, 1) = -1.0;
  CHECK_THROWS_AS(psd_sqrt(HermitianMatrix(d)), ValidationError);
}

TEST_CASE("hpd_solve solves and loads singular systems") {
  Rng rng(5);
  const HermitianMatrix a = random_psd(4, 4, rng);
  const CMatrix b = CMatrix::Random(4, 2);
  CHECK(max_abs(a.matrix() * hpd_solve(a, b) - b) < 1e-10);

  // Rank-deficient: the jitter path must succeed and report a load.
  const HermitianMatrix s = random_psd(4, 2, rng);
  const HpdFactorization f(s);
  CHECK(f.jitter() > 0.0);
  CHECK_THROWS_AS(hpd_solve(a, CMatrix::Zero(3, 1)), ValidationError);
}

TEST_CASE("kron matches the block definition") {
  CMatrix a(2, 2), b(2, 1);
  a << cplx(1, 0), cplx(2, 0), cplx(0, 1), cplx(3, 0);
  b << cplx(1, 0), cplx(0, -1);
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 2);
  CHECK(k(2, 0) == cplx(0, 1));
  CHECK(k(3, 0) == cplx(1, 0));  // (0 + 1j) * (0 - 1j)
  CHECK(k(1, 1) == cplx(0, -2));
}

TEST_CASE("complex Gaussian sampler matches its covariance") {
  Rng rng(6);
  const HermitianMatrix cov = random_psd(3, 3, rng);
  const ComplexGaussianSampler sampler(cov);
  const int n = 200000;
  CMatrix acc = CMatrix::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const CVector x = sampler(rng);
    acc += x * x.adjoint();
  }
  acc /= n;
  CHECK(max_abs(acc - cov.matrix()) < 0.03 * cov.frobenius_norm());
}

TEST_CASE("standard complex normal has unit variance split evenly") {
  Rng rng(7);
  const CVector z = standard_complex_normal(200000, rng);
  CHECK(z.real().squaredNorm() / z.size() == doctest::Approx(0.5).epsilon(0.02));
  CHECK(z.imag().squaredNorm() / z.size() == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("make_stream separates every coordinate") {
  std::set<std::uint64_t> first;
  for (std::uint64_t s : {1ULL, 2ULL}) {
    for (std::uint64_t sc : {0ULL, 1ULL}) {
      for (std::uint64_t i : {0ULL, 1ULL, (1ULL << 32)}) {
        for (std::uint64_t t : {0ULL, 1ULL}) {
          Rng r = make_stream(s, sc, i, t);
          first.insert(r());
        }
      }
    }
  }
  CHECK(first.size() == 24);
  Rng a = make_stream(9, 1, 2, 3), b = make_stream(9, 1, 2, 3);
  CHECK(a() == b());
}

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(-3.0) == doctest::Approx(0.501187).epsilon(1e-5));
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
  CHECK(std::isinf(linear_to_db(0.0)));
  CHECK(linear_to_db(0.0) < 0.0);
}
