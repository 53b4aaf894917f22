// SPDX-License-Identifier: Apache-2.0
//
// Two-step estimation under jamming: first the jamming-pilot inner products
// (norms, phase differences, leakage onto the used pilot), then linear MMSE
// estimates of the jammer and user channels.

#pragma once

#include "jamsense/channel.hpp"
#include "jamsense/signal.hpp"

namespace jamsense {

/// Moments of the linear model b = C x + v, where b holds the per-pilot
/// observation energies and x the unused-pilot norms |alpha_i|^2.
struct MomentModel {
  RVector e_x;  // tau-1
  RMatrix exx;  // (tau-1) x (tau-1)
  RVector e_v;  // tau
  RMatrix evv;  // tau x tau
  RMatrix c;    // tau x (tau-1)
  RMatrix gain; // E[x b^T] E[b b^T]^{-1}, (tau-1) x tau
};

struct MomentOptions {
  /// Adds tau q tr(R_jam_beam) to the mean of the used-pilot residual, so
  /// that the linear model keeps the constant term of the used-pilot energy
  /// implied by sum_i |alpha_i|^2 = 1.  Off by default.
  bool used_pilot_offset = false;
  /// Exact residual correlation.  Adds q^2 ||R_jam_beam||_F^2 +
  /// 2 q sigma^2 tr(R_jam_beam) + N_b sigma^4 to the diagonal of the
  /// unused-pilot block (the printed block repeats the off-diagonal value on
  /// the diagonal) and, together with used_pilot_offset, the variance
  /// (tau q tr(R_jam_beam))^2 / tau of the pilot-energy term.  Off by default.
  bool exact_correlation = false;
};

struct FirstMoments {
  RVector mean;
  RMatrix second;
};

/// E[x] = 1/tau and E[x x^T] = (1 1^T + I) / tau^2.
FirstMoments lemma1_moments(int tau);

/// Mean and correlation of the residual v.
FirstMoments lemma2_moments(const SystemConfig& cfg, const ChannelStatistics& stats,
                            const MomentOptions& options = {});

/// Design matrix tau q tr(R_jam_beam) [-1 | I]^T.
RMatrix design_matrix(const SystemConfig& cfg, const ChannelStatistics& stats);

MomentModel build_moment_model(const SystemConfig& cfg, const ChannelStatistics& stats,
                               const MomentOptions& options = {});

/// b = (||y_1||^2, ..., ||y_tau||^2).
RVector observation_energies(const TrainingObservations& obs);

/// Linear MMSE estimate of x clamped at zero.
RVector estimate_norms(const TrainingObservations& obs, const MomentModel& model);
/// Same estimate without the clamp.
RVector estimate_norms_unclamped(const RVector& b, const MomentModel& model);

/// Per-pilot energy detector ignoring the user pilot:
/// [||y_i||^2 - N_b sigma^2]^+ / (tau q tr(R_jam_beam)).
RVector asymptotic_norms(const TrainingObservations& obs, const SystemConfig& cfg,
                         const ChannelStatistics& stats);

struct PhaseEstimate {
  RVector theta;         // tau-2 angles, relative to the first unused pilot
  bool degenerate = false;  // some bilinear form was exactly zero
};

/// theta_i = arg(y_2^H y_i / N_b) for the unused pilots after the first.
PhaseEstimate estimate_phase_diffs(const TrainingObservations& obs);

struct Alpha1Estimate {
  double value = 0.0;
  double grave = 0.0;  // from the unit-energy constraint
  double acute = 0.0;  // from the used-pilot energy
  bool fallback = false;  // acute undefined (no jammer power); value = grave
};

Alpha1Estimate estimate_alpha1(const TrainingObservations& obs, const RVector& norms_sq,
                               const SystemConfig& cfg, const ChannelStatistics& stats);

/// alpha_bar = (|a_2|, |a_3| e^{j theta_3}, ...).
CVector reconstruct_alpha_bar(const RVector& norms_sq, const RVector& theta);

struct InnerProductEstimate {
  RVector norm_sq_unused;
  RVector phase_diffs;
  double alpha1_norm = 0.0;
  CVector alpha_bar_hat;
  bool flagged = false;
};

InnerProductEstimate estimate_inner_products(const TrainingObservations& obs,
                                             const MomentModel& model, const SystemConfig& cfg,
                                             const ChannelStatistics& stats);

/// Jammer channel MMSE by direct evaluation of the stacked formula.  The
/// estimate refers to the jammer channel re-phased by alpha_bar's gauge,
/// h_JM e^{-j arg(alpha_2)}.
CVector estimate_jammer_channel(const TrainingObservations& obs, const CVector& alpha_bar,
                                const SystemConfig& cfg, const ChannelStatistics& stats,
                                const BeamMaps& maps);

/// Same estimator through the eigenstructure of the jammer beam covariance;
/// avoids forming the (tau-1) N_b stacked covariance.
class JammerChannelEstimator {
 public:
  JammerChannelEstimator(const SystemConfig& cfg, const ChannelStatistics& stats,
                         const BeamMaps& maps);

  CVector operator()(const TrainingObservations& obs, const CVector& alpha_bar) const;
  CVector operator()(const CMatrix& unused, const CVector& alpha_bar) const;

 private:
  double tq_;
  double sigma2_;
  RVector lambda_;
  CMatrix v_;  // jammer beam eigenvectors
  CMatrix w_;  // conj(R_jam) U_JM V
};

/// User channel MMSE by direct evaluation of the printed formula.
CVector estimate_user_channel(const TrainingObservations& obs, double alpha1_norm,
                              const SystemConfig& cfg, const ChannelStatistics& stats,
                              const BeamMaps& maps);

/// Same estimator with the jammer term applied as a low-rank update of a
/// precomputed jamming-free inverse.  alpha1_norm = 0 gives the
/// jamming-ignorant estimator.
class UserChannelEstimator {
 public:
  UserChannelEstimator(const SystemConfig& cfg, const ChannelStatistics& stats,
                       const BeamMaps& maps);

  CVector operator()(const TrainingObservations& obs, double alpha1_norm) const;
  CVector operator()(const CVector& used, double alpha1_norm) const;

 private:
  double scale_;  // sqrt(tau p)
  double tq_;     // tau q
  CMatrix g_;     // R U* C^{-1}
  CMatrix k_;     // G L Q
  CMatrix p_;     // Q^H L^H C^{-1}
  RVector omega_;
};

/// ||a - b||^2 / ||b||^2; NaN when b = 0.
double nmse(const CVector& estimate, const CVector& truth);

/// Jammer channel in the alpha_bar gauge: h e^{-j arg(alpha_2)}.
CVector rephase_jammer(const CVector& h_jam, const CVector& alpha);

struct TrialErrors {
  double alpha1_sq_error = 0.0;       // (|a1_hat| - |a1|)^2
  double unused_sq_error = 0.0;       // mean over unused pilots of (|a_hat| - |a|)^2
  double phase_cosine = 0.0;          // mean over i >= 3 of cos(theta_hat - theta); NaN if tau = 2
};

TrialErrors inner_product_errors(const InnerProductEstimate& est, const InnerProducts& truth);

}  // namespace jamsense
