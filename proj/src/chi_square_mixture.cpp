// SPDX-License-Identifier: Apache-2.0

#include "jamsense/chi_square_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace jamsense {

namespace {

// Largest |1 - two_beta / c_j|; the expansion converges when this is < 1.
double contraction(const RVector& w, double two_beta) {
  return (1.0 - two_beta * w.array().inverse()).abs().maxCoeff();
}

// With integer nu, T is a chain of exponential phases with means c_j, each
// visited nu times.  For the bidiagonal generator S of that chain,
// P(T > x) = e_0^T exp(S x) 1 and f(x) = e_0^T exp(S x) s0 with s0 = -S 1.
RMatrix phase_generator(const RVector& w, int nu) {
  const Index d = w.size() * nu;
  RMatrix g = RMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    const double rate = 1.0 / w(k / nu);
    g(k, k) = -rate;
    if (k + 1 < d) g(k, k + 1) = rate;
  }
  return g;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(a, x);
}

ChiSquareMixtureSeries ChiSquareMixtureSeries::build(const RVector& weights, double multiplicity,
                                                     const SeriesOptions& options) {
  if (weights.size() == 0) {
    throw ValidationError("chi-square mixture: no positive weights (empty signal subspace)");
  }
  if ((weights.array() <= 0.0).any() || !weights.allFinite()) {
    throw ValidationError("chi-square mixture: weights must be positive and finite");
  }
  if (!(multiplicity > 0.0)) throw ValidationError("chi-square mixture: multiplicity must be > 0");
  if (options.terms < 0 || options.max_terms < options.terms) {
    throw ValidationError("chi-square mixture: invalid truncation settings");
  }

  const double n = static_cast<double>(weights.size());
  const double hm = n / weights.array().inverse().sum();
  const double wmin = weights.minCoeff();

  ChiSquareMixtureSeries s;
  double two_beta = hm;
  s.rule_ = ScaleRule::HarmonicMean;
  switch (options.scale) {
    case ScaleRule::HarmonicMean:
      break;
    case ScaleRule::MinWeight:
      two_beta = wmin;
      s.rule_ = ScaleRule::MinWeight;
      break;
    case ScaleRule::Auto:
      if (contraction(weights, wmin) < contraction(weights, hm)) {
        two_beta = wmin;
        s.rule_ = ScaleRule::MinWeight;
      }
      break;
  }
  s.beta_ = 0.5 * two_beta;
  s.degree_ = multiplicity * n;
  s.mean_ = multiplicity * weights.sum();

  const RVector g = 1.0 - two_beta * weights.array().inverse();
  const double log_a0 = multiplicity * (two_beta * weights.array().inverse()).log().sum();
  if (log_a0 < -700.0) {
    throw NumericalError("chi-square mixture: leading coefficient underflows (weight spread " +
                         std::to_string(weights.maxCoeff() / wmin) + ")");
  }

  std::vector<double>& a = s.coeffs_;
  std::vector<double> b(1, 0.0);  // b[k] = 2 nu sum_j g_j^k, k >= 1
  a.push_back(std::exp(log_a0));
  RVector gpow = RVector::Ones(g.size());
  double mass = a[0];
  const int cap = options.adaptive ? options.max_terms : options.terms;
  s.converged_ = std::abs(1.0 - mass) <= options.tail_tolerance;
  for (int m = 1; m <= cap; ++m) {
    if (m > options.terms && s.converged_) break;
    gpow.array() *= g.array();
    b.push_back(2.0 * multiplicity * gpow.sum());
    double acc = 0.0;
    for (int r = 0; r < m; ++r) acc += b[m - r] * a[r];
    a.push_back(acc / (2.0 * m));
    mass += a.back();
    if (!std::isfinite(mass)) throw NumericalError("chi-square mixture: series diverged");
    s.converged_ = std::abs(1.0 - mass) <= options.tail_tolerance;
  }
  s.raw_mass_ = mass;
  const bool integer_nu = std::abs(multiplicity - std::round(multiplicity)) < 1e-12;
  if (options.adaptive && options.phase_type_fallback && !s.converged_ && integer_nu) {
    s.phase_ = phase_generator(weights, static_cast<int>(std::round(multiplicity)));
  }
  if (!(mass > 0.0)) throw NumericalError("chi-square mixture: non-positive coefficient mass");
  for (double& c : a) c /= mass;
  return s;
}

double ChiSquareMixtureSeries::sf(double x) const {
  if (!(x > 0.0)) return 1.0;
  if (uses_phase_type()) {
    const RMatrix e = (phase_ * x).exp();
    return std::clamp(e.row(0).sum(), 0.0, 1.0);
  }
  const double z = x / (2.0 * beta_);
  const double lz = std::log(z);
  double q = gamma_q(degree_, z);
  // Q(d + m + 1, z) = Q(d + m, z) + z^(d+m) e^-z / Gamma(d + m + 1).
  double log_t = degree_ * lz - z - boost::math::lgamma(degree_ + 1.0);
  double sum = coeffs_[0] * q;
  for (std::size_t m = 1; m < coeffs_.size(); ++m) {
    q = std::min(1.0, q + std::exp(log_t));
    log_t += lz - std::log(degree_ + static_cast<double>(m));
    sum += coeffs_[m] * q;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ChiSquareMixtureSeries::cdf(double x) const { return 1.0 - sf(x); }

double ChiSquareMixtureSeries::pdf(double x) const {
  if (x < 0.0) return 0.0;
  if (uses_phase_type()) {
    const RMatrix e = (phase_ * x).exp();
    const Index d = phase_.rows();
    return std::max(e(0, d - 1) * -phase_(d - 1, d - 1), 0.0);
  }
  const double tb = 2.0 * beta_;
  if (x == 0.0) {
    if (degree_ > 1.0) return 0.0;
    if (degree_ < 1.0) return std::numeric_limits<double>::infinity();
    return coeffs_[0] / tb;
  }
  const double z = x / tb;
  const double lz = std::log(z);
  double log_g = (degree_ - 1.0) * lz - z - boost::math::lgamma(degree_) - std::log(tb);
  double sum = 0.0;
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    sum += coeffs_[m] * std::exp(log_g);
    log_g += lz - std::log(degree_ + static_cast<double>(m));
  }
  return sum;
}

double threshold_for_tail(const ChiSquareMixtureSeries& s, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw ValidationError("threshold: target probability must lie in (0, 1)");
  }
  double lo = 0.0;
  double hi = std::max(2.0 * s.beta() * s.base_degree(), std::numeric_limits<double>::min());
  int doublings = 0;
  while (s.sf(hi) >= target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200) throw NumericalError("threshold: upper bracket not found");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (s.sf(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double gamma = 0.5 * (lo + hi);
  if (std::abs(s.sf(gamma) - target) > 1e-6) {
    throw NumericalError("threshold: bisection did not reach the target tail probability");
  }
  return gamma;
}

}  // namespace jamsense
