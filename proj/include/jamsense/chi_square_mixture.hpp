// SPDX-License-Identifier: Apache-2.0
//
// Distribution of a positive linear combination of independent Gamma
// variables, T = sum_j c_j G_j with G_j ~ Gamma(nu, 1), expanded as a mixture
// of Gamma(d + m, 2 beta) densities with d = nu * (number of weights).

#pragma once

#include <vector>

#include "jamsense/numerics.hpp"

namespace jamsense {

enum class ScaleRule {
  /// 2 beta = harmonic mean of the weights.  Diverges when some weight is
  /// smaller than half the harmonic mean.
  HarmonicMean,
  /// 2 beta = smallest weight.  Always convergent, all coefficients >= 0.
  MinWeight,
  /// Harmonic mean when the expansion converges, smallest weight otherwise.
  Auto,
};

struct SeriesOptions {
  int terms = 100;               // coefficients a_0..a_terms are always computed
  bool adaptive = true;          // keep adding terms until the raw mass reaches 1
  int max_terms = 20000;         // hard cap for adaptive extension
  double tail_tolerance = 1e-12; // |1 - sum a_m| target before normalization
  ScaleRule scale = ScaleRule::Auto;
  // When the adaptive series stops at max_terms without converging and nu is
  // an integer, evaluate pdf and sf exactly as a phase-type distribution.
  bool phase_type_fallback = true;
};

class ChiSquareMixtureSeries {
 public:
  ChiSquareMixtureSeries() = default;

  /// weights: positive c_j; multiplicity: Gamma shape nu shared by all terms.
  static ChiSquareMixtureSeries build(const RVector& weights, double multiplicity,
                                      const SeriesOptions& options = {});

  const std::vector<double>& coeffs() const { return coeffs_; }
  double beta() const { return beta_; }
  double base_degree() const { return degree_; }
  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool normalized() const { return true; }
  /// Coefficient mass before normalization.
  double raw_mass() const { return raw_mass_; }
  /// True when the raw mass met the tail tolerance.
  bool converged() const { return converged_; }
  ScaleRule scale_rule() const { return rule_; }
  /// True when pdf and sf come from the phase-type matrix exponential.
  bool uses_phase_type() const { return phase_.size() > 0; }
  /// Exact mean sum_j nu c_j of the underlying variable.
  double mean() const { return mean_; }

  double pdf(double x) const;
  double cdf(double x) const;
  /// Survival function P(T > x).
  double sf(double x) const;

 private:
  std::vector<double> coeffs_;
  double beta_ = 0.0;
  double degree_ = 0.0;
  double raw_mass_ = 0.0;
  double mean_ = 0.0;
  bool converged_ = false;
  RMatrix phase_;  // sub-generator, empty unless the fallback is active
  ScaleRule rule_ = ScaleRule::Auto;
};

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Smallest gamma with sf(gamma) <= target, by bisection on [0, hi] where hi
/// doubles from 2 beta * degree until sf(hi) < target.
double threshold_for_tail(const ChiSquareMixtureSeries& s, double target);

}  // namespace jamsense
