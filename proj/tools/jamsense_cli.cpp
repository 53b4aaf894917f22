// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: evaluates detection theory, calibrates thresholds
// and runs the Monte Carlo sweeps, writing long-format CSV.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jamsense/config.hpp"
#include "jamsense/csv.hpp"
#include "jamsense/experiments.hpp"

namespace {

struct Common {
  std::string config;
  std::string preset;
  std::optional<long> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> alpha;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool with_preset = true) {
  app->add_option("--config", c.config, "JSON experiment description")->check(CLI::ExistingFile);
  if (with_preset) app->add_option("--preset", c.preset, "start from a named preset (fig2..fig8)");
  app->add_option("--trials", c.trials, "Monte Carlo trials per sweep point")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "base random seed");
  app->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  app->add_option("--alpha", c.alpha,
                  "inner-product handling for detection: nominal, drawn or resample");
  app->add_option("--out", c.out, "output CSV path (stdout when omitted)");
}

jamsense::ExperimentSpec resolve(const Common& c) {
  if (!c.config.empty() && !c.preset.empty()) {
    throw jamsense::ValidationError("--config and --preset are mutually exclusive");
  }
  jamsense::ExperimentSpec spec;
  if (!c.config.empty()) {
    spec = jamsense::load_config(c.config);
  } else if (!c.preset.empty()) {
    spec = jamsense::preset(c.preset);
  } else {
    throw jamsense::ValidationError("one of --config or --preset is required");
  }
  if (c.trials) spec.trials = *c.trials;
  if (c.seed) spec.seed = *c.seed;
  if (c.workers) spec.workers = *c.workers;
  if (c.alpha) spec.alpha = jamsense::alpha_choice_from_string(*c.alpha);
  spec.validate();
  return spec;
}

bool is_detection(jamsense::Scenario s) {
  using jamsense::Scenario;
  return s == Scenario::RocTheory || s == Scenario::RocCompare || s == Scenario::DetectionSweep;
}

void emit(const std::vector<jamsense::ResultRow>& rows, const std::string& out) {
  if (out.empty()) {
    std::cout << jamsense::format_csv(rows);
  } else {
    jamsense::write_csv(rows, out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jamming detection and channel estimation for beamspace MIMO beam training"};
  app.require_subcommand(1);

  Common theory_opts, threshold_opts, roc_opts, estimate_opts, reproduce_opts;
  std::string figure;

  auto* theory = app.add_subcommand("theory", "closed-form false-alarm and detection probabilities");
  add_common(theory, theory_opts);
  auto* threshold = app.add_subcommand("threshold", "threshold calibration for target false alarm");
  add_common(threshold, threshold_opts);
  auto* roc = app.add_subcommand("roc", "empirical and theoretical detection curves");
  add_common(roc, roc_opts);
  auto* estimate = app.add_subcommand("estimate", "inner-product and channel estimation sweeps");
  add_common(estimate, estimate_opts);
  auto* reproduce = app.add_subcommand("reproduce", "run a named figure preset");
  reproduce->add_option("figure", figure, "fig2 .. fig8")->required();
  add_common(reproduce, reproduce_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (theory->parsed()) {
      const auto spec = resolve(theory_opts);
      emit(jamsense::run_theory(spec), theory_opts.out);
    } else if (threshold->parsed()) {
      const auto spec = resolve(threshold_opts);
      emit(jamsense::run_thresholds(spec), threshold_opts.out);
    } else if (roc->parsed()) {
      const auto spec = resolve(roc_opts);
      if (!is_detection(spec.scenario)) {
        throw jamsense::ValidationError("roc needs a detection scenario, got " +
                                        jamsense::to_string(spec.scenario));
      }
      emit(jamsense::run_experiment(spec), roc_opts.out);
    } else if (estimate->parsed()) {
      const auto spec = resolve(estimate_opts);
      if (is_detection(spec.scenario)) {
        throw jamsense::ValidationError("estimate needs an estimation scenario, got " +
                                        jamsense::to_string(spec.scenario));
      }
      emit(jamsense::run_experiment(spec), estimate_opts.out);
    } else if (reproduce->parsed()) {
      Common c = reproduce_opts;
      if (!c.config.empty()) throw jamsense::ValidationError("reproduce takes no --config");
      c.preset = figure;
      emit(jamsense::run_experiment(resolve(c)), c.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "jamsense: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
