// SPDX-License-Identifier: Apache-2.0

#include "jamsense/estimation.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace jamsense {

namespace {

// Real symmetric solve with the same diagonal-load policy as hpd_solve.
RMatrix spd_solve(const RMatrix& a, const RMatrix& b) {
  Eigen::LLT<RMatrix> llt(a);
  if (llt.info() == Eigen::Success) return llt.solve(b);
  const double base = std::abs(a.trace()) / static_cast<double>(a.rows());
  double delta = 1e-12;
  for (int attempt = 0; attempt <= 6; ++attempt, delta *= 2.0) {
    RMatrix loaded = a;
    loaded.diagonal().array() += delta * base;
    llt.compute(loaded);
    if (llt.info() == Eigen::Success) return llt.solve(b);
  }
  throw NumericalError("estimate_norms: E[b b^T] is singular after maximum jitter");
}

double trace_of_product(const CMatrix& a, const CMatrix& b) {
  return std::abs(a.cwiseProduct(b.transpose()).sum());
}

}  // namespace

FirstMoments lemma1_moments(int tau) {
  if (tau < 2) throw ValidationError("lemma1_moments: tau must be at least 2");
  const Index n = tau - 1;
  const double t2 = static_cast<double>(tau) * tau;
  FirstMoments m;
  m.mean = RVector::Constant(n, 1.0 / tau);
  m.second = (RMatrix::Ones(n, n) + RMatrix::Identity(n, n)) / t2;
  return m;
}

FirstMoments lemma2_moments(const SystemConfig& cfg, const ChannelStatistics& stats,
                            const MomentOptions& options) {
  const double tau = cfg.tau;
  const double p = cfg.pilot_power;
  const double q = cfg.jammer_power;
  const double s2 = cfg.noise_variance;
  const double nb = cfg.beams();
  const double trk = stats.user_beam.trace();
  const double trj = stats.jam_beam.trace();
  const double fk2 = std::pow(stats.user_beam.frobenius_norm(), 2);
  const double fj2 = std::pow(stats.jam_beam.frobenius_norm(), 2);
  const double trjk = trace_of_product(stats.jam_beam.matrix(), stats.user_beam.matrix());

  const double theta = trk * trk + fk2;
  const double rho_tilde = tau * tau * p * p * theta + 2.0 * q * q * fj2 +
                           (nb + 1.0) * s2 * (2.0 * tau * p * trk + nb * s2);
  const double rho11 = rho_tilde + 2.0 * tau * p * q * trjk + 2.0 * q * s2 * trj;
  const double rho12 = nb * s2 * (tau * p * trk + nb * s2) + q * q * fj2;
  const double rho22 = nb * nb * s2 * s2 + q * q * fj2;

  const Index n = cfg.tau;
  FirstMoments m;
  m.mean = RVector::Constant(n, nb * s2);
  m.mean(0) += tau * p * trk;
  m.second = RMatrix::Constant(n, n, rho22);
  m.second.row(0).setConstant(rho12);
  m.second.col(0).setConstant(rho12);
  m.second(0, 0) = rho11;

  if (options.used_pilot_offset) {
    const double c = tau * q * trj;
    const RVector mu = m.mean;
    m.second(0, 0) += 2.0 * c * mu(0) + c * c;
    for (Index j = 1; j < n; ++j) {
      m.second(0, j) += c * mu(j);
      m.second(j, 0) = m.second(0, j);
    }
    m.mean(0) += c;
  }
  if (options.exact_correlation) {
    const double extra = q * q * fj2 + 2.0 * q * s2 * trj + nb * s2 * s2;
    for (Index j = 1; j < n; ++j) m.second(j, j) += extra;
    if (options.used_pilot_offset) {
      // ||psi||^2 has variance 1 / tau rather than the zero implied by the
      // unit-energy substitution.
      const double c = tau * q * trj;
      m.second(0, 0) += c * c / tau;
    }
  }
  return m;
}

RMatrix design_matrix(const SystemConfig& cfg, const ChannelStatistics& stats) {
  const Index n = cfg.tau - 1;
  RMatrix c(cfg.tau, n);
  c.row(0).setConstant(-1.0);
  c.bottomRows(n).setIdentity();
  return (cfg.tau * cfg.jammer_power * stats.jam_beam.trace()) * c;
}

MomentModel build_moment_model(const SystemConfig& cfg, const ChannelStatistics& stats,
                               const MomentOptions& options) {
  cfg.validate();
  MomentModel m;
  const FirstMoments x = lemma1_moments(cfg.tau);
  const FirstMoments v = lemma2_moments(cfg, stats, options);
  m.e_x = x.mean;
  m.exx = x.second;
  m.e_v = v.mean;
  m.evv = v.second;
  m.c = design_matrix(cfg, stats);

  const RMatrix exb = m.exx * m.c.transpose() + m.e_x * m.e_v.transpose();
  const RMatrix cex_ev = m.c * m.e_x * m.e_v.transpose();
  RMatrix ebb = m.c * m.exx * m.c.transpose() + cex_ev + cex_ev.transpose() + m.evv;
  ebb = 0.5 * (ebb + ebb.transpose());
  // gain = exb ebb^{-1}  <=>  ebb gain^T = exb^T
  m.gain = spd_solve(ebb, exb.transpose()).transpose();
  return m;
}

RVector observation_energies(const TrainingObservations& obs) {
  RVector b(obs.unused.cols() + 1);
  b(0) = obs.used.squaredNorm();
  b.tail(obs.unused.cols()) = obs.unused.colwise().squaredNorm().transpose();
  return b;
}

RVector estimate_norms_unclamped(const RVector& b, const MomentModel& model) {
  if (b.size() != model.gain.cols()) {
    throw ValidationError("estimate_norms: energy vector length does not match the model");
  }
  return model.gain * b;
}

RVector estimate_norms(const TrainingObservations& obs, const MomentModel& model) {
  return estimate_norms_unclamped(observation_energies(obs), model).cwiseMax(0.0);
}

RVector asymptotic_norms(const TrainingObservations& obs, const SystemConfig& cfg,
                         const ChannelStatistics& stats) {
  const double denom = cfg.tau * cfg.jammer_power * stats.jam_beam.trace();
  if (!(denom > 0.0)) throw ValidationError("asymptotic_norms: jammer power must be positive");
  const double floor = cfg.beams() * cfg.noise_variance;
  RVector out = obs.unused.colwise().squaredNorm().transpose();
  return ((out.array() - floor).max(0.0) / denom).matrix();
}

PhaseEstimate estimate_phase_diffs(const TrainingObservations& obs) {
  const Index m = obs.unused.cols();
  if (m < 2) throw ValidationError("estimate_phase_diffs: needs tau >= 3");
  const double nb = static_cast<double>(obs.unused.rows());
  PhaseEstimate out;
  out.theta.resize(m - 1);
  for (Index i = 1; i < m; ++i) {
    const cplx z = obs.unused.col(0).dot(obs.unused.col(i)) / nb;  // y_2^H y_i / N_b
    if (z == cplx(0.0, 0.0)) {
      out.theta(i - 1) = 0.0;
      out.degenerate = true;
    } else {
      out.theta(i - 1) = std::arg(z);
    }
  }
  return out;
}

Alpha1Estimate estimate_alpha1(const TrainingObservations& obs, const RVector& norms_sq,
                               const SystemConfig& cfg, const ChannelStatistics& stats) {
  Alpha1Estimate a;
  a.grave = std::sqrt(std::max(0.0, 1.0 - norms_sq.sum()));
  const double denom = cfg.tau * cfg.jammer_power * stats.jam_beam.trace();
  if (!(denom > 0.0)) {
    a.fallback = true;
    a.value = a.grave;
    return a;
  }
  const double excess = obs.used.squaredNorm() -
                        cfg.tau * cfg.pilot_power * stats.user_beam.trace() -
                        cfg.beams() * cfg.noise_variance;
  a.acute = std::sqrt(std::max(0.0, excess) / denom);
  a.value = cfg.epsilon * a.grave + (1.0 - cfg.epsilon) * a.acute;
  return a;
}

CVector reconstruct_alpha_bar(const RVector& norms_sq, const RVector& theta) {
  if (theta.size() + 1 != norms_sq.size()) {
    throw ValidationError("reconstruct_alpha_bar: expected one phase per pilot after the first");
  }
  CVector out(norms_sq.size());
  out(0) = std::sqrt(std::max(norms_sq(0), 0.0));
  for (Index i = 1; i < norms_sq.size(); ++i) {
    out(i) = std::polar(std::sqrt(std::max(norms_sq(i), 0.0)), theta(i - 1));
  }
  return out;
}

InnerProductEstimate estimate_inner_products(const TrainingObservations& obs,
                                             const MomentModel& model, const SystemConfig& cfg,
                                             const ChannelStatistics& stats) {
  InnerProductEstimate e;
  e.norm_sq_unused = estimate_norms(obs, model);
  if (cfg.tau >= 3) {
    const PhaseEstimate ph = estimate_phase_diffs(obs);
    e.phase_diffs = ph.theta;
    e.flagged = ph.degenerate;
  } else {
    e.phase_diffs.resize(0);
  }
  const Alpha1Estimate a1 = estimate_alpha1(obs, e.norm_sq_unused, cfg, stats);
  e.alpha1_norm = a1.value;
  e.flagged = e.flagged || a1.fallback;
  e.alpha_bar_hat = reconstruct_alpha_bar(e.norm_sq_unused, e.phase_diffs);
  return e;
}

CVector estimate_jammer_channel(const TrainingObservations& obs, const CVector& alpha_bar,
                                const SystemConfig& cfg, const ChannelStatistics& stats,
                                const BeamMaps& maps) {
  if (alpha_bar.size() != cfg.tau - 1 || obs.unused.cols() != cfg.tau - 1) {
    throw ValidationError("estimate_jammer_channel: expected tau - 1 unused pilots");
  }
  const double tq = cfg.tau * cfg.jammer_power;
  const CMatrix ru = stats.jam.matrix().conjugate() * maps.jam;  // R*_JM U_JM
  const CMatrix a = kron(alpha_bar.adjoint(), ru);
  CMatrix r = tq * kron(alpha_bar * alpha_bar.adjoint(), stats.jam_beam.matrix());
  r.diagonal().array() += cfg.noise_variance;
  const CVector z = hpd_solve(HermitianMatrix(std::move(r), 1e-9), obs.stacked());
  return (std::sqrt(tq) * (a * z)).conjugate();
}

JammerChannelEstimator::JammerChannelEstimator(const SystemConfig& cfg,
                                               const ChannelStatistics& stats,
                                               const BeamMaps& maps)
    : tq_(cfg.tau * cfg.jammer_power),
      sigma2_(cfg.noise_variance),
      lambda_(stats.jam_beam_evd.eigenvalues.cwiseMax(0.0)),
      v_(stats.jam_beam_evd.eigenvectors),
      w_(stats.jam.matrix().conjugate() * maps.jam * stats.jam_beam_evd.eigenvectors) {}

CVector JammerChannelEstimator::operator()(const CMatrix& unused, const CVector& alpha_bar) const {
  if (alpha_bar.size() != unused.cols() || unused.rows() != v_.rows()) {
    throw ValidationError("JammerChannelEstimator: dimension mismatch");
  }
  // With a = alpha_bar / |alpha_bar|, the stacked covariance is
  // sigma^2 I + (a kron V) diag(c) (a kron V)^H, c = tau q |alpha_bar|^2 lambda.
  const CVector t = unused * alpha_bar.conjugate();
  const double energy = alpha_bar.squaredNorm();
  CVector u = v_.adjoint() * t;
  for (Index n = 0; n < u.size(); ++n) u(n) /= tq_ * energy * lambda_(n) + sigma2_;
  return (std::sqrt(tq_) * (w_ * u)).conjugate();
}

CVector JammerChannelEstimator::operator()(const TrainingObservations& obs,
                                           const CVector& alpha_bar) const {
  return (*this)(obs.unused, alpha_bar);
}

CVector estimate_user_channel(const TrainingObservations& obs, double alpha1_norm,
                              const SystemConfig& cfg, const ChannelStatistics& stats,
                              const BeamMaps& maps) {
  if (alpha1_norm < 0.0) throw ValidationError("estimate_user_channel: alpha1_norm must be >= 0");
  const double tp = cfg.tau * cfg.pilot_power;
  const double tq = cfg.tau * cfg.jammer_power;
  const CMatrix ru = stats.user.matrix() * maps.user.conjugate();  // R U*
  CMatrix inner = tp * (maps.user.transpose() * ru) +
                  (tq * alpha1_norm * alpha1_norm) * stats.jam_beam.matrix().conjugate();
  inner.diagonal().array() += cfg.noise_variance;
  const CVector z = hpd_solve(HermitianMatrix(std::move(inner), 1e-9), obs.used.conjugate());
  return std::sqrt(tp) * (ru * z);
}

UserChannelEstimator::UserChannelEstimator(const SystemConfig& cfg, const ChannelStatistics& stats,
                                           const BeamMaps& maps)
    : scale_(std::sqrt(cfg.tau * cfg.pilot_power)), tq_(cfg.tau * cfg.jammer_power) {
  const double tp = cfg.tau * cfg.pilot_power;
  // U^T R U* is the conjugate of the user beam covariance.
  CMatrix c = tp * stats.user_beam.matrix().conjugate();
  c.diagonal().array() += cfg.noise_variance;
  const HpdFactorization cf{HermitianMatrix(std::move(c), 1e-9)};

  const CMatrix ru = stats.user.matrix() * maps.user.conjugate();
  g_ = cf.solve(CMatrix(ru.adjoint())).adjoint();

  const EigenDecomposition& evd = stats.jam_beam_evd;
  const Index r = evd.rank();
  const CMatrix l =
      evd.eigenvectors.leftCols(r).conjugate() * evd.eigenvalues.head(r).cwiseSqrt().asDiagonal();
  const CMatrix cil = cf.solve(l);
  const EigenDecomposition m = hermitian_evd(HermitianMatrix(l.adjoint() * cil, 1e-8));
  omega_ = m.eigenvalues;
  k_ = g_ * l * m.eigenvectors;
  p_ = m.eigenvectors.adjoint() * cil.adjoint();
}

CVector UserChannelEstimator::operator()(const CVector& used, double alpha1_norm) const {
  if (alpha1_norm < 0.0) throw ValidationError("UserChannelEstimator: alpha1_norm must be >= 0");
  if (used.size() != g_.cols()) throw ValidationError("UserChannelEstimator: dimension mismatch");
  const CVector y = used.conjugate();
  CVector h = g_ * y;
  const double s = tq_ * alpha1_norm * alpha1_norm;
  if (s > 0.0 && omega_.size() > 0) {
    CVector d = p_ * y;
    for (Index j = 0; j < d.size(); ++j) d(j) *= s / (1.0 + s * omega_(j));
    h -= k_ * d;
  }
  return scale_ * h;
}

CVector UserChannelEstimator::operator()(const TrainingObservations& obs,
                                         double alpha1_norm) const {
  return (*this)(obs.used, alpha1_norm);
}

double nmse(const CVector& estimate, const CVector& truth) {
  if (estimate.size() != truth.size()) throw ValidationError("nmse: dimension mismatch");
  const double den = truth.squaredNorm();
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (estimate - truth).squaredNorm() / den;
}

CVector rephase_jammer(const CVector& h_jam, const CVector& alpha) {
  if (alpha.size() < 2) throw ValidationError("rephase_jammer: need at least two pilots");
  return h_jam * std::polar(1.0, -std::arg(alpha(1)));
}

TrialErrors inner_product_errors(const InnerProductEstimate& est, const InnerProducts& truth) {
  TrialErrors e;
  const Index m = truth.alpha.size() - 1;
  if (est.norm_sq_unused.size() != m) {
    throw ValidationError("inner_product_errors: estimate and truth lengths differ");
  }
  const double d1 = est.alpha1_norm - std::abs(truth.alpha(0));
  e.alpha1_sq_error = d1 * d1;
  double acc = 0.0;
  for (Index i = 0; i < m; ++i) {
    const double d = std::sqrt(est.norm_sq_unused(i)) - std::abs(truth.alpha(i + 1));
    acc += d * d;
  }
  e.unused_sq_error = acc / static_cast<double>(m);
  if (m >= 2) {
    double cs = 0.0;
    for (Index i = 1; i < m; ++i) {
      cs += std::cos(est.phase_diffs(i - 1) - std::arg(truth.alpha_bar(i)));
    }
    e.phase_cosine = cs / static_cast<double>(m - 1);
  } else {
    e.phase_cosine = std::numeric_limits<double>::quiet_NaN();
  }
  return e;
}

}  // namespace jamsense
