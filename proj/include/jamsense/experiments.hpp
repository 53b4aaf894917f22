// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo scenarios: seeded, parallel sweeps over pilot length,
// correlation and power, producing long-format result rows.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jamsense/channel.hpp"
#include "jamsense/chi_square_mixture.hpp"
#include "jamsense/estimation.hpp"

namespace jamsense {

enum class Scenario {
  RocTheory,            // theory vs simulation of P_FA and P_D over a threshold grid
  RocCompare,           // LMPT vs GLRT at target false-alarm rates
  DetectionSweep,       // LMPT detection probability at target false-alarm rates
  InnerProductQuality,  // inner-product norm and phase estimation accuracy
  UserNmse,             // user channel NMSE
  JammerNmse,           // jammer channel NMSE
};

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// How the unused-pilot inner products are chosen in detection scenarios.
enum class AlphaChoice {
  Nominal,   // |alpha_i| = 1/sqrt(tau), zero phase, in every trial
  Drawn,     // one jamming pilot drawn per sweep point, reused in every trial
  Resample,  // fresh jamming pilot per trial; theory averaged over draws
};

std::string to_string(AlphaChoice a);
AlphaChoice alpha_choice_from_string(const std::string& name);

struct PowerPoint {
  double snr_db = 0.0;
  double jnr_db = 0.0;
  double pilot_power = 1.0;   // linear
  double jammer_power = 1.0;  // linear
};

struct SweepSpec {
  std::vector<int> tau;
  std::vector<double> rho;
  std::vector<PowerPoint> powers;
  std::vector<double> gamma;  // explicit threshold grid; empty means automatic
  int gamma_count = 41;       // size of the automatic grid
  std::vector<double> pfa;    // target false-alarm rates
};

struct ExperimentSpec {
  Scenario scenario = Scenario::RocTheory;
  SystemConfig cfg;
  SweepSpec sweep;
  int trials = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output_path;
  SeriesOptions series;
  AlphaChoice alpha = AlphaChoice::Nominal;
  int theory_alpha_draws = 200;
  MomentOptions moments;

  void validate() const;
};

struct ResultRow {
  std::string scenario;
  std::vector<std::pair<std::string, double>> params;
  std::string metric;
  double value = 0.0;
  long trials = 0;
  double std_error = 0.0;
};

/// Runs the scenario.  Rows are ordered by sweep point (tau, then rho, then
/// power point), then by grid value, then by metric.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// Theory-only evaluation of P_FA and P_D on the threshold grid.
std::vector<ResultRow> run_theory(const ExperimentSpec& spec);

/// Thresholds for the target false-alarm rates of the sweep.
std::vector<ResultRow> run_thresholds(const ExperimentSpec& spec);

/// Named presets: fig2 .. fig8.
std::vector<std::string> preset_names();
ExperimentSpec preset(const std::string& name);

}  // namespace jamsense
