// SPDX-License-Identifier: Apache-2.0

#include "jamsense/detection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "jamsense/parallel.hpp"

namespace jamsense {

StackedCovariance assemble_covariance(const CVector& alpha_unused, const HermitianMatrix& jam_beam,
                                      double jammer_power, double noise_variance, int tau) {
  if (alpha_unused.size() != tau - 1) {
    throw ValidationError("assemble_covariance: expected tau - 1 inner products");
  }
  CMatrix r = (tau * jammer_power) * kron(alpha_unused * alpha_unused.adjoint(), jam_beam.matrix());
  r.diagonal().array() += noise_variance;
  StackedCovariance out;
  out.matrix = HermitianMatrix(std::move(r), 1e-9);
  out.alpha = alpha_unused;
  out.jammer_power = jammer_power;
  out.noise_variance = noise_variance;
  out.tau = tau;
  return out;
}

double lmpt_statistic(const CMatrix& unused, const EigenDecomposition& evd) {
  const Index r = evd.rank();
  if (unused.rows() != evd.eigenvectors.rows()) {
    throw ValidationError("lmpt_statistic: observation length does not match the beam count");
  }
  const CMatrix proj = evd.eigenvectors.leftCols(r).adjoint() * unused;  // r x (tau-1)
  return (evd.eigenvalues.head(r).asDiagonal() * proj.cwiseAbs2()).sum();
}

double lmpt_statistic(const TrainingObservations& obs, const EigenDecomposition& evd) {
  return lmpt_statistic(obs.unused, evd);
}

double glrt_statistic(const CMatrix& unused) {
  const double nb = static_cast<double>(unused.rows());
  const double m = static_cast<double>(unused.cols());
  if (unused.rows() == 0 || unused.cols() == 0) {
    throw ValidationError("glrt_statistic: empty observation matrix");
  }
  const double s = unused.rowwise().sum().cwiseAbs().sum();
  return std::max(s / (nb * m * m) - 1.0 / m, 0.0);
}

double glrt_statistic(const TrainingObservations& obs) { return glrt_statistic(obs.unused); }

ChiSquareMixtureSeries series_h0(const EigenDecomposition& evd, double noise_variance, int tau,
                                 const SeriesOptions& options) {
  if (tau < 2) throw ValidationError("series_h0: tau must be at least 2");
  if (!(noise_variance > 0.0)) throw ValidationError("series_h0: noise variance must be positive");
  const RVector lam = evd.positive_eigenvalues();
  if (lam.size() == 0) throw ValidationError("series_h0: jammer beam covariance has rank 0");
  return ChiSquareMixtureSeries::build(noise_variance * lam, static_cast<double>(tau - 1), options);
}

ChiSquareMixtureSeries series_h1(const StackedCovariance& cov, const HermitianMatrix& jam_beam,
                                 const SeriesOptions& options) {
  const int blocks = cov.tau - 1;
  if (cov.matrix.dim() != blocks * jam_beam.dim()) {
    throw ValidationError("series_h1: covariance dimension does not match tau and N_b");
  }
  const HermitianMatrix root = psd_sqrt(cov.matrix);
  const CMatrix weight = kron(CMatrix::Identity(blocks, blocks), jam_beam.matrix());
  const HermitianMatrix b(root.matrix() * weight * root.matrix(), 1e-8);
  const RVector eps = hermitian_evd(b).positive_eigenvalues();
  if (eps.size() == 0) throw ValidationError("series_h1: statistic has no positive weights");
  return ChiSquareMixtureSeries::build(eps, 1.0, options);
}

double pfa(double gamma, const ChiSquareMixtureSeries& h0) { return h0.sf(gamma); }

double pd(double gamma, const ChiSquareMixtureSeries& h1) { return h1.sf(gamma); }

double threshold_for_pfa(double target, const ChiSquareMixtureSeries& h0) {
  return threshold_for_tail(h0, target);
}

DetectionOutcome decide(Detector detector, double statistic, double threshold) {
  DetectionOutcome out;
  out.statistic = statistic;
  out.threshold = threshold;
  out.detector = detector;
  out.decision = statistic > threshold ? Hypothesis::H1 : Hypothesis::H0;
  return out;
}

StatisticSamples simulate_statistics(const SystemConfig& cfg, const ChannelStatistics& stats,
                                     const BeamMaps& maps, const DetectionTrialOptions& options) {
  if (options.trials < 1) throw ValidationError("simulate_statistics: trials must be >= 1");
  if (options.alpha_mode == AlphaMode::Fixed && options.fixed_alpha.size() != cfg.tau - 1) {
    throw ValidationError("simulate_statistics: fixed alpha must have tau - 1 entries");
  }
  const std::size_t n = static_cast<std::size_t>(options.trials);
  StatisticSamples out;
  out.lmpt_h0.resize(n);
  out.lmpt_h1.resize(n);
  out.glrt_h0.resize(n);
  out.glrt_h1.resize(n);

  const ChannelSampler sampler(stats);
  const PilotBook book = make_pilot_book(cfg.tau);
  const CVector zero_jam = CVector::Zero(cfg.beams());

  parallel_for(n, options.workers, [&](std::size_t t) {
    Rng rng = make_stream(options.seed, options.scenario, options.sweep_index, t);
    const CMatrix y0 = simulate_unused(cfg, CVector::Zero(cfg.tau - 1), zero_jam, false, rng);

    CVector alpha;
    if (options.alpha_mode == AlphaMode::Fixed) {
      alpha = options.fixed_alpha;
    } else {
      const InnerProducts ip = inner_products(book, sample_jamming_pilot(cfg.tau, rng));
      alpha = ip.alpha.tail(cfg.tau - 1);
    }
    const CVector g = maps.jam.adjoint() * sampler.sample_jam(rng).conjugate();
    const CMatrix y1 = simulate_unused(cfg, alpha, g, true, rng);

    out.lmpt_h0[t] = lmpt_statistic(y0, stats.jam_beam_evd);
    out.lmpt_h1[t] = lmpt_statistic(y1, stats.jam_beam_evd);
    out.glrt_h0[t] = glrt_statistic(y0);
    out.glrt_h1[t] = glrt_statistic(y1);
  });
  return out;
}

double exceedance(const std::vector<double>& samples, double gamma) {
  if (samples.empty()) return 0.0;
  const auto above = std::count_if(samples.begin(), samples.end(), [&](double v) { return v > gamma; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

RocCurve empirical_roc(const std::vector<double>& h0, const std::vector<double>& h1,
                       const std::vector<double>& gamma_grid) {
  RocCurve c;
  c.gamma = gamma_grid;
  for (double g : gamma_grid) {
    c.pfa.push_back(exceedance(h0, g));
    c.pd.push_back(exceedance(h1, g));
  }
  return c;
}

double empirical_pd_at_pfa(const std::vector<double>& h0, const std::vector<double>& h1,
                           double target) {
  if (h0.empty() || h1.empty()) throw ValidationError("empirical_pd_at_pfa: empty sample set");
  if (!(target >= 0.0 && target <= 1.0)) {
    throw ValidationError("empirical_pd_at_pfa: target must lie in [0, 1]");
  }
  std::vector<double> s = h0;
  std::sort(s.begin(), s.end(), std::greater<>());
  const double n0 = static_cast<double>(s.size());
  const std::size_t k = static_cast<std::size_t>(std::floor(target * n0));
  if (k >= s.size()) return 1.0;
  const double c = s[k];
  const auto above0 = std::count_if(s.begin(), s.end(), [&](double v) { return v > c; });
  const auto equal0 = std::count_if(s.begin(), s.end(), [&](double v) { return v == c; });
  const double kappa = (target * n0 - static_cast<double>(above0)) / static_cast<double>(equal0);
  const auto above1 = std::count_if(h1.begin(), h1.end(), [&](double v) { return v > c; });
  const auto equal1 = std::count_if(h1.begin(), h1.end(), [&](double v) { return v == c; });
  return (static_cast<double>(above1) + kappa * static_cast<double>(equal1)) /
         static_cast<double>(h1.size());
}

RocCurve run_roc(const SystemConfig& cfg, const ChannelStatistics& stats, const BeamMaps& maps,
                 Detector detector, const std::vector<double>& gamma_grid,
                 const DetectionTrialOptions& options) {
  const StatisticSamples s = simulate_statistics(cfg, stats, maps, options);
  if (detector == Detector::Lmpt) return empirical_roc(s.lmpt_h0, s.lmpt_h1, gamma_grid);
  return empirical_roc(s.glrt_h0, s.glrt_h1, gamma_grid);
}

}  // namespace jamsense
