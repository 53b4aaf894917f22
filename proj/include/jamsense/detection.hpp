// SPDX-License-Identifier: Apache-2.0
//
// Jamming detection from the unused-pilot observations: the LMPT statistic,
// its exact null and alternative distributions, threshold calibration, and a
// GLRT baseline.

#pragma once

#include <cstdint>
#include <vector>

#include "jamsense/channel.hpp"
#include "jamsense/chi_square_mixture.hpp"
#include "jamsense/signal.hpp"

namespace jamsense {

enum class Hypothesis { H0, H1 };
enum class Detector { Lmpt, Glrt };

struct StackedCovariance {
  HermitianMatrix matrix;  // (tau-1) N_b square
  CVector alpha;           // unused-pilot inner products
  double jammer_power = 0.0;
  double noise_variance = 0.0;
  int tau = 0;
};

struct DetectionOutcome {
  double statistic = 0.0;
  double threshold = 0.0;
  Hypothesis decision = Hypothesis::H0;
  Detector detector = Detector::Lmpt;
};

/// tau q (alpha alpha^H) kron R_jam_beam + sigma^2 I.
StackedCovariance assemble_covariance(const CVector& alpha_unused, const HermitianMatrix& jam_beam,
                                      double jammer_power, double noise_variance, int tau);

/// sum_i sum_n lambda_n |y_i^H v_n|^2 over the unused-pilot columns.
double lmpt_statistic(const CMatrix& unused, const EigenDecomposition& jam_beam_evd);
double lmpt_statistic(const TrainingObservations& obs, const EigenDecomposition& jam_beam_evd);

/// max(sum_n |sum_i y_{i,n}| / (N_b (tau-1)^2) - 1/(tau-1), 0).
double glrt_statistic(const CMatrix& unused);
double glrt_statistic(const TrainingObservations& obs);

/// Null distribution: weights lambda_n sigma^2, each with multiplicity tau-1.
ChiSquareMixtureSeries series_h0(const EigenDecomposition& jam_beam_evd, double noise_variance,
                                 int tau, const SeriesOptions& options = {});

/// Alternative distribution: weights are the positive eigenvalues of
/// R^{1/2} (I kron R_jam_beam) R^{1/2}, each with multiplicity one.
ChiSquareMixtureSeries series_h1(const StackedCovariance& cov, const HermitianMatrix& jam_beam,
                                 const SeriesOptions& options = {});

double pfa(double gamma, const ChiSquareMixtureSeries& h0);
double pd(double gamma, const ChiSquareMixtureSeries& h1);
double threshold_for_pfa(double target, const ChiSquareMixtureSeries& h0);

DetectionOutcome decide(Detector detector, double statistic, double threshold);

enum class AlphaMode {
  Resample,  // fresh jamming pilot in every H1 trial
  Fixed,     // the same unused-pilot inner products in every H1 trial
};

struct DetectionTrialOptions {
  int trials = 10000;
  std::uint64_t seed = 1;
  std::uint64_t scenario = 0;
  std::uint64_t sweep_index = 0;
  int workers = 1;
  AlphaMode alpha_mode = AlphaMode::Resample;
  CVector fixed_alpha;  // length tau-1, used in Fixed mode
};

/// Detector statistics from `trials` independent H0 draws and `trials`
/// independent H1 draws, stored in trial order.
struct StatisticSamples {
  std::vector<double> lmpt_h0, lmpt_h1;
  std::vector<double> glrt_h0, glrt_h1;
};

StatisticSamples simulate_statistics(const SystemConfig& cfg, const ChannelStatistics& stats,
                                     const BeamMaps& maps, const DetectionTrialOptions& options);

struct RocCurve {
  std::vector<double> gamma;
  std::vector<double> pfa;
  std::vector<double> pd;
};

/// Empirical exceedance rates (statistic > gamma) on a threshold grid.
RocCurve empirical_roc(const std::vector<double>& h0, const std::vector<double>& h1,
                       const std::vector<double>& gamma_grid);

/// Fraction of samples strictly above gamma.
double exceedance(const std::vector<double>& samples, double gamma);

/// Detection probability of the randomized threshold test whose false-alarm
/// rate equals `target` on the empirical null samples.  Ties (for example
/// the atom at zero of the clamped GLRT) are split by randomization, which
/// linearly interpolates the empirical ROC.
double empirical_pd_at_pfa(const std::vector<double>& h0, const std::vector<double>& h1,
                           double target);

/// Monte Carlo ROC for one detector on a threshold grid.
RocCurve run_roc(const SystemConfig& cfg, const ChannelStatistics& stats, const BeamMaps& maps,
                 Detector detector, const std::vector<double>& gamma_grid,
                 const DetectionTrialOptions& options);

}  // namespace jamsense
