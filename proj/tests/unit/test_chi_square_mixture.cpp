// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "jamsense/chi_square_mixture.hpp"

using namespace jamsense;

namespace {

// Q(n, z) for integer n by the finite Poisson sum.
double poisson_tail(int n, double z) {
  double term = 1.0, acc = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) term *= z / k;
    acc += term;
  }
  return std::exp(-z) * acc;
}

// Survival function of a sum of independent exponentials with distinct means.
double hypoexponential_sf(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    double w = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k != j) w *= c[j] / (c[j] - c[k]);
    }
    acc += w * std::exp(-x / c[j]);
  }
  return acc;
}

RVector vec(std::initializer_list<double> v) {
  RVector r(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

}  // namespace

TEST_CASE("gamma_q matches the finite Poisson sum") {
  for (int n : {1, 2, 5}) {
    for (double z : {0.1, 1.0, 4.0, 12.0}) {
      CHECK(gamma_q(n, z) == doctest::Approx(poisson_tail(n, z)).epsilon(1e-12));
    }
  }
}

TEST_CASE("single weight reduces to a scaled Gamma") {
  const auto s = ChiSquareMixtureSeries::build(vec({2.5}), 3.0);
  for (double x : {0.5, 3.0, 7.5, 20.0}) {
    CHECK(s.sf(x) == doctest::Approx(poisson_tail(3, x / 2.5)).epsilon(1e-10));
  }
  CHECK(s.mean() == doctest::Approx(7.5));
}

TEST_CASE("distinct exponential weights match the hypoexponential law") {
  const std::vector<double> c = {0.3, 1.0, 2.2, 4.0};
  for (ScaleRule rule : {ScaleRule::Auto, ScaleRule::MinWeight, ScaleRule::HarmonicMean}) {
    SeriesOptions o;
    o.scale = rule;
    ChiSquareMixtureSeries s;
    try {
      s = ChiSquareMixtureSeries::build(vec({0.3, 1.0, 2.2, 4.0}), 1.0, o);
    } catch (const NumericalError&) {
      CHECK(rule == ScaleRule::HarmonicMean);  // only this scale may diverge
      continue;
    }
    if (!s.converged()) continue;
    for (double x : {0.2, 1.0, 3.0, 8.0, 20.0}) {
      CHECK(s.sf(x) == doctest::Approx(hypoexponential_sf(c, x)).epsilon(1e-8));
      CHECK(s.cdf(x) + s.sf(x) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("repeated weights with multiplicity") {
  // 1.5 Gamma(2) + 0.5 Gamma(2) is the sum of four exponentials with means
  // {1.5, 1.5, 0.5, 0.5}.
  const auto a = ChiSquareMixtureSeries::build(vec({1.5, 0.5}), 2.0);
  const auto b = ChiSquareMixtureSeries::build(vec({1.5, 1.5, 0.5, 0.5}), 1.0);
  for (double x : {0.5, 2.0, 6.0}) CHECK(a.sf(x) == doctest::Approx(b.sf(x)).epsilon(1e-10));
}

TEST_CASE("pdf integrates to one and reproduces the mean") {
  const auto s = ChiSquareMixtureSeries::build(vec({0.05, 0.4, 1.0, 3.0, 3.1}), 3.0);
  const double hi = threshold_for_tail(s, 1e-14);
  const int n = 20000;
  const double h = hi / n;
  double mass = 0.0, mean = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    mass += w * s.pdf(x);
    mean += w * x * s.pdf(x);
  }
  mass *= h / 3.0;
  mean *= h / 3.0;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(mean == doctest::Approx(s.mean()).epsilon(1e-6));
}

TEST_CASE("series agrees with sampled sums (KS)") {
  const std::vector<double> w = {0.2, 0.9, 2.0};
  const double nu = 2.0;
  const auto s = ChiSquareMixtureSeries::build(vec({0.2, 0.9, 2.0}), nu);
  std::mt19937_64 rng(31);
  std::gamma_distribution<double> g(nu, 1.0);
  const int n = 40000;
  std::vector<double> x(n);
  for (auto& v : x) {
    v = 0.0;
    for (double c : w) v += c * g(rng);
  }
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = s.cdf(x[i]);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n),
                   std::abs(f - static_cast<double>(i + 1) / n)});
  }
  CHECK(ks < 0.01);
}

TEST_CASE("tail threshold round trip") {
  const auto s = ChiSquareMixtureSeries::build(vec({0.1, 0.7, 1.3}), 1.0);
  for (double target : {0.5, 0.1, 0.01, 1e-4}) {
    const double g = threshold_for_tail(s, target);
    CHECK(std::abs(s.sf(g) - target) <= 1e-6);
  }
}

TEST_CASE("non-adaptive truncation keeps exactly the requested terms") {
  SeriesOptions o;
  o.adaptive = false;
  o.terms = 100;
  const auto s = ChiSquareMixtureSeries::build(vec({0.5, 1.0}), 1.0, o);
  CHECK(s.truncation() == 100);
  CHECK(s.raw_mass() <= 1.0 + 1e-12);
}

TEST_CASE("invalid weights are rejected") {
  CHECK_THROWS_AS(ChiSquareMixtureSeries::build(vec({1.0, -0.1}), 1.0), ValidationError);
  CHECK_THROWS_AS(ChiSquareMixtureSeries::build(RVector(0), 1.0), ValidationError);
  CHECK_THROWS_AS(ChiSquareMixtureSeries::build(vec({1.0}), 0.0), ValidationError);
}

TEST_CASE("phase-type fallback matches the hypoexponential law for wide weight spreads") {
  // Spread 4000: the min-weight series would need ~1e5 terms.
  const std::vector<double> c = {0.15, 0.9, 7.0, 600.0};
  const auto s = ChiSquareMixtureSeries::build(vec({0.15, 0.9, 7.0, 600.0}), 1.0);
  CHECK_FALSE(s.converged());
  CHECK(s.uses_phase_type());
  for (double x : {0.5, 5.0, 50.0, 400.0, 1500.0, 5000.0}) {
    CHECK(s.sf(x) == doctest::Approx(hypoexponential_sf(c, x)).epsilon(1e-8));
  }
  // Density against a central difference of the closed-form tail.
  for (double x : {20.0, 300.0, 2000.0}) {
    const double h = 1e-3 * x;
    const double fd = (hypoexponential_sf(c, x - h) - hypoexponential_sf(c, x + h)) / (2.0 * h);
    CHECK(s.pdf(x) == doctest::Approx(fd).epsilon(1e-6));
  }
  const double g = threshold_for_tail(s, 1e-3);
  CHECK(hypoexponential_sf(c, g) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("phase-type fallback can be disabled") {
  SeriesOptions o;
  o.phase_type_fallback = false;
  const auto s = ChiSquareMixtureSeries::build(vec({0.15, 0.9, 7.0, 600.0}), 1.0, o);
  CHECK_FALSE(s.uses_phase_type());
  CHECK(s.truncation() == o.max_terms);
}
