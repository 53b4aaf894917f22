// SPDX-License-Identifier: Apache-2.0

#include "jamsense/experiments.hpp"

#include <cmath>
#include <limits>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>

#include "jamsense/detection.hpp"
#include "jamsense/parallel.hpp"

namespace jamsense {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::RocTheory: return "roc_theory";
    case Scenario::RocCompare: return "roc_compare";
    case Scenario::DetectionSweep: return "detection_sweep";
    case Scenario::InnerProductQuality: return "inner_product_quality";
    case Scenario::UserNmse: return "user_nmse";
    case Scenario::JammerNmse: return "jammer_nmse";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
  for (Scenario s : {Scenario::RocTheory, Scenario::RocCompare, Scenario::DetectionSweep,
                     Scenario::InnerProductQuality, Scenario::UserNmse, Scenario::JammerNmse}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("unknown scenario '" + name + "'");
}

std::string to_string(AlphaChoice a) {
  switch (a) {
    case AlphaChoice::Nominal: return "nominal";
    case AlphaChoice::Drawn: return "drawn";
    case AlphaChoice::Resample: return "resample";
  }
  return "unknown";
}

AlphaChoice alpha_choice_from_string(const std::string& name) {
  for (AlphaChoice a : {AlphaChoice::Nominal, AlphaChoice::Drawn, AlphaChoice::Resample}) {
    if (to_string(a) == name) return a;
  }
  throw ValidationError("unknown alpha mode '" + name + "' (nominal, drawn, resample)");
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (workers < 1) throw ValidationError("workers must be >= 1");
  if (theory_alpha_draws < 1) throw ValidationError("theory_alpha_draws must be >= 1");
  if (sweep.tau.empty() || sweep.powers.empty()) {
    throw ValidationError("sweep must contain at least one point");
  }
  for (int t : sweep.tau) {
    if (t < 2) throw ValidationError("sweep tau values must be >= 2");
  }
  for (double r : sweep.rho) {
    if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("sweep rho values must lie in [0, 1]");
  }
  for (double p : sweep.pfa) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("sweep pfa values must lie in (0, 1)");
  }
  if (sweep.gamma.empty() && sweep.gamma_count < 2) {
    throw ValidationError("automatic gamma grid needs at least two points");
  }
  for (double g : sweep.gamma) {
    if (!(g >= 0.0)) throw ValidationError("gamma values must be >= 0");
  }
  if (series.terms < 0) throw ValidationError("series terms must be >= 0");
  SystemConfig probe = cfg;
  for (int t : sweep.tau) {
    probe.tau = t;
    probe.validate();
  }
  if (scenario == Scenario::InnerProductQuality || scenario == Scenario::JammerNmse) {
    for (const auto& p : sweep.powers) {
      if (!(p.jammer_power > 0.0)) throw ValidationError("estimation scenarios need jammer power");
    }
  }
}

namespace {

constexpr std::uint64_t kTheoryStream = 1000;
constexpr std::uint64_t kDrawnTrial = std::numeric_limits<std::uint64_t>::max();

using Params = std::vector<std::pair<std::string, double>>;

struct Point {
  std::uint64_t index = 0;
  SystemConfig cfg;
  Params params;
};

std::vector<Point> expand(const ExperimentSpec& spec) {
  std::vector<Point> out;
  std::uint64_t index = 0;
  std::vector<double> rhos = spec.sweep.rho;
  const bool keep_rho = rhos.empty();
  if (keep_rho) rhos.push_back(spec.cfg.rho_jm);
  for (int tau : spec.sweep.tau) {
    for (double rho : rhos) {
      for (const auto& pw : spec.sweep.powers) {
        Point p;
        p.index = index++;
        p.cfg = spec.cfg;
        p.cfg.tau = tau;
        if (!keep_rho) p.cfg.set_rho(rho);
        p.cfg.pilot_power = pw.pilot_power;
        p.cfg.jammer_power = pw.jammer_power;
        p.cfg.seed = spec.seed;
        p.params = {{"tau", tau}, {"rho", rho}, {"snr_db", pw.snr_db}, {"jnr_db", pw.jnr_db}};
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

// Channel statistics depend only on dimensions, correlation and beam layout.
class StatsCache {
 public:
  struct Entry {
    SystemConfig key;
    BeamMaps maps;
    ChannelStatistics stats;
  };

  const Entry& get(const SystemConfig& cfg) {
    for (const auto& e : entries_) {
      if (same(e->key, cfg)) return *e;
    }
    auto e = std::make_unique<Entry>();
    e->key = cfg;
    e->maps = build_beam_maps(cfg);
    e->stats = build_statistics(cfg, e->maps);
    entries_.push_back(std::move(e));
    return *entries_.back();
  }

 private:
  static bool same(const SystemConfig& a, const SystemConfig& b) {
    return a.m_bs == b.m_bs && a.m_ue == b.m_ue && a.n_bs == b.n_bs && a.n_ue == b.n_ue &&
           a.rho_bs == b.rho_bs && a.rho_ue == b.rho_ue && a.rho_jm == b.rho_jm &&
           a.beam_selection == b.beam_selection;
  }
  std::vector<std::unique_ptr<Entry>> entries_;
};

struct Summary {
  double mean = 0.0;
  double se = 0.0;
  long n = 0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  double sum = 0.0;
  for (double x : v) {
    if (std::isfinite(x)) {
      sum += x;
      ++s.n;
    }
  }
  if (s.n == 0) {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (double x : v) {
    if (std::isfinite(x)) ss += (x - s.mean) * (x - s.mean);
  }
  if (s.n > 1) s.se = std::sqrt(ss / static_cast<double>(s.n - 1) / static_cast<double>(s.n));
  return s;
}

double binomial_se(double p, long n) {
  if (n <= 0) return 0.0;
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

ResultRow make_row(const ExperimentSpec& spec, Params params, const std::string& metric,
                   double value, long trials, double se) {
  ResultRow r;
  r.scenario = to_string(spec.scenario);
  r.params = std::move(params);
  r.metric = metric;
  r.value = value;
  r.trials = trials;
  r.std_error = se;
  return r;
}

ResultRow linear_row(const ExperimentSpec& spec, const Params& params, const std::string& metric,
                     const Summary& s) {
  return make_row(spec, params, metric, s.mean, s.n, s.se);
}

ResultRow db_row(const ExperimentSpec& spec, const Params& params, const std::string& metric,
                 const Summary& s) {
  const double se = s.mean > 0.0 ? 10.0 / std::numbers::ln10 * s.se / s.mean : 0.0;
  return make_row(spec, params, metric, linear_to_db(s.mean), s.n, se);
}

Params with(Params p, const std::string& name, double value) {
  p.emplace_back(name, value);
  return p;
}

std::string describe(const Point& p) {
  std::ostringstream os;
  os << "sweep point " << p.index << " (";
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    os << (i ? ", " : "") << p.params[i].first << "=" << p.params[i].second;
  }
  os << ")";
  return os.str();
}

// Theory objects shared by the detection scenarios.
struct DetectionTheory {
  ChiSquareMixtureSeries h0;
  std::vector<ChiSquareMixtureSeries> h1;  // one per inner-product draw
  CVector fixed_alpha;                     // empty in resample mode

  double pd(double gamma) const {
    double acc = 0.0;
    for (const auto& s : h1) acc += s.sf(gamma);
    return acc / static_cast<double>(h1.size());
  }
};

CVector nominal_alpha(int tau) {
  return CVector::Constant(tau - 1, cplx(1.0 / std::sqrt(static_cast<double>(tau)), 0.0));
}

CVector unused_alpha(const PilotBook& book, Rng& rng) {
  const InnerProducts ip = inner_products(book, sample_jamming_pilot(book.tau(), rng));
  return ip.alpha.tail(book.tau() - 1);
}

DetectionTheory detection_theory(const ExperimentSpec& spec, const Point& p,
                                 const ChannelStatistics& stats) {
  const SystemConfig& cfg = p.cfg;
  DetectionTheory t;
  t.h0 = series_h0(stats.jam_beam_evd, cfg.noise_variance, cfg.tau, spec.series);
  const PilotBook book = make_pilot_book(cfg.tau);
  const auto scen = static_cast<std::uint64_t>(spec.scenario);
  auto h1_for = [&](const CVector& a) {
    return series_h1(
        assemble_covariance(a, stats.jam_beam, cfg.jammer_power, cfg.noise_variance, cfg.tau),
        stats.jam_beam, spec.series);
  };
  switch (spec.alpha) {
    case AlphaChoice::Nominal:
      t.fixed_alpha = nominal_alpha(cfg.tau);
      t.h1.push_back(h1_for(t.fixed_alpha));
      break;
    case AlphaChoice::Drawn: {
      Rng rng = make_stream(spec.seed, scen, p.index, kDrawnTrial);
      t.fixed_alpha = unused_alpha(book, rng);
      t.h1.push_back(h1_for(t.fixed_alpha));
      break;
    }
    case AlphaChoice::Resample:
      for (int d = 0; d < spec.theory_alpha_draws; ++d) {
        Rng rng = make_stream(spec.seed, scen + kTheoryStream, p.index, d);
        t.h1.push_back(h1_for(unused_alpha(book, rng)));
      }
      break;
  }
  return t;
}

std::vector<double> gamma_grid(const ExperimentSpec& spec, const DetectionTheory& t) {
  if (!spec.sweep.gamma.empty()) return spec.sweep.gamma;
  const double hi = threshold_for_tail(t.h1.front(), 1e-3);
  std::vector<double> g;
  const int n = spec.sweep.gamma_count;
  for (int i = 0; i < n; ++i) g.push_back(hi * i / (n - 1));
  return g;
}

StatisticSamples detection_samples(const ExperimentSpec& spec, const Point& p,
                                   const StatsCache::Entry& e, const DetectionTheory& t) {
  DetectionTrialOptions o;
  o.trials = spec.trials;
  o.seed = spec.seed;
  o.scenario = static_cast<std::uint64_t>(spec.scenario);
  o.sweep_index = p.index;
  o.workers = spec.workers;
  if (spec.alpha == AlphaChoice::Resample) {
    o.alpha_mode = AlphaMode::Resample;
  } else {
    o.alpha_mode = AlphaMode::Fixed;
    o.fixed_alpha = t.fixed_alpha;
  }
  return simulate_statistics(p.cfg, e.stats, e.maps, o);
}

void roc_theory_point(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                      std::vector<ResultRow>& rows) {
  const DetectionTheory t = detection_theory(spec, p, e.stats);
  const StatisticSamples s = detection_samples(spec, p, e, t);
  const long n = spec.trials;
  for (double g : gamma_grid(spec, t)) {
    const Params pr = with(p.params, "gamma", g);
    const double fa = exceedance(s.lmpt_h0, g);
    const double d = exceedance(s.lmpt_h1, g);
    rows.push_back(make_row(spec, pr, "pfa_theory", pfa(g, t.h0), 0, 0.0));
    rows.push_back(make_row(spec, pr, "pfa_emp", fa, n, binomial_se(fa, n)));
    rows.push_back(make_row(spec, pr, "pd_theory", t.pd(g), 0, 0.0));
    rows.push_back(make_row(spec, pr, "pd_emp", d, n, binomial_se(d, n)));
  }
}

void detection_sweep_point(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                           std::vector<ResultRow>& rows) {
  const DetectionTheory t = detection_theory(spec, p, e.stats);
  const StatisticSamples s = detection_samples(spec, p, e, t);
  const long n = spec.trials;
  for (double target : spec.sweep.pfa) {
    const Params pr = with(p.params, "pfa", target);
    const double g = threshold_for_pfa(target, t.h0);
    const double fa = exceedance(s.lmpt_h0, g);
    const double d = exceedance(s.lmpt_h1, g);
    rows.push_back(make_row(spec, pr, "threshold", g, 0, 0.0));
    rows.push_back(make_row(spec, pr, "pd_theory", t.pd(g), 0, 0.0));
    rows.push_back(make_row(spec, pr, "pd_emp", d, n, binomial_se(d, n)));
    rows.push_back(make_row(spec, pr, "pfa_emp", fa, n, binomial_se(fa, n)));
  }
}

void roc_compare_point(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                       std::vector<ResultRow>& rows) {
  const DetectionTheory t = detection_theory(spec, p, e.stats);
  const StatisticSamples s = detection_samples(spec, p, e, t);
  const long n = spec.trials;
  for (double target : spec.sweep.pfa) {
    const Params pr = with(p.params, "pfa", target);
    const double g = threshold_for_pfa(target, t.h0);
    const double dl = empirical_pd_at_pfa(s.lmpt_h0, s.lmpt_h1, target);
    const double dg = empirical_pd_at_pfa(s.glrt_h0, s.glrt_h1, target);
    rows.push_back(make_row(spec, pr, "pd_lmpt_theory", t.pd(g), 0, 0.0));
    rows.push_back(make_row(spec, pr, "pd_lmpt_emp", dl, n, binomial_se(dl, n)));
    rows.push_back(make_row(spec, pr, "pd_glrt_emp", dg, n, binomial_se(dg, n)));
  }
}

// Per-trial draw shared by the estimation scenarios.
struct TrialDraw {
  InnerProducts ip;
  ChannelRealization ch;
  TrainingObservations obs;
};

TrialDraw draw_trial(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                     const ChannelSampler& sampler, const PilotBook& book, std::size_t t) {
  Rng rng = make_stream(spec.seed, static_cast<std::uint64_t>(spec.scenario), p.index, t);
  TrialDraw d;
  d.ip = inner_products(book, sample_jamming_pilot(p.cfg.tau, rng));
  d.ch = sampler(rng);
  d.obs = simulate_projected(p.cfg, e.maps, d.ip, d.ch, true, rng);
  return d;
}

using Metrics = std::vector<std::vector<double>>;

Metrics run_trials(const ExperimentSpec& spec, std::size_t metric_count,
                   const std::function<void(std::size_t, std::vector<double>&)>& trial) {
  const std::size_t n = static_cast<std::size_t>(spec.trials);
  Metrics m(metric_count, std::vector<double>(n));
  parallel_for(n, spec.workers, [&](std::size_t t) {
    std::vector<double> out(metric_count, std::numeric_limits<double>::quiet_NaN());
    trial(t, out);
    for (std::size_t k = 0; k < metric_count; ++k) m[k][t] = out[k];
  });
  return m;
}

void inner_product_point(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                         std::vector<ResultRow>& rows) {
  const SystemConfig& cfg = p.cfg;
  const MomentModel model = build_moment_model(cfg, e.stats, spec.moments);
  const ChannelSampler sampler(e.stats);
  const PilotBook book = make_pilot_book(cfg.tau);
  const Metrics m = run_trials(spec, 4, [&](std::size_t t, std::vector<double>& out) {
    const TrialDraw d = draw_trial(spec, p, e, sampler, book, t);
    const InnerProductEstimate est = estimate_inner_products(d.obs, model, cfg, e.stats);
    const TrialErrors err = inner_product_errors(est, d.ip);
    const RVector base = asymptotic_norms(d.obs, cfg, e.stats);
    double b = 0.0;
    for (Index i = 0; i < base.size(); ++i) {
      const double diff = std::sqrt(base(i)) - std::abs(d.ip.alpha(i + 1));
      b += diff * diff;
    }
    out[0] = err.alpha1_sq_error;
    out[1] = err.unused_sq_error;
    out[2] = b / static_cast<double>(base.size());
    out[3] = err.phase_cosine;
  });
  rows.push_back(db_row(spec, p.params, "mse1_db", summarize(m[0])));
  rows.push_back(db_row(spec, p.params, "mse2_db", summarize(m[1])));
  rows.push_back(db_row(spec, p.params, "mse2_baseline_db", summarize(m[2])));
  if (cfg.tau >= 3) rows.push_back(linear_row(spec, p.params, "cos", summarize(m[3])));
}

void user_nmse_point(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                     std::vector<ResultRow>& rows) {
  const SystemConfig& cfg = p.cfg;
  const MomentModel model = build_moment_model(cfg, e.stats, spec.moments);
  const UserChannelEstimator estimator(cfg, e.stats, e.maps);
  const ChannelSampler sampler(e.stats);
  const PilotBook book = make_pilot_book(cfg.tau);
  const Metrics m = run_trials(spec, 3, [&](std::size_t t, std::vector<double>& out) {
    const TrialDraw d = draw_trial(spec, p, e, sampler, book, t);
    double a1 = 0.0;
    if (cfg.jammer_power > 0.0) {
      a1 = estimate_inner_products(d.obs, model, cfg, e.stats).alpha1_norm;
    }
    out[0] = nmse(estimator(d.obs, a1), d.ch.user);
    out[1] = nmse(estimator(d.obs, std::abs(d.ip.alpha(0))), d.ch.user);
    out[2] = nmse(estimator(d.obs, 0.0), d.ch.user);
  });
  rows.push_back(db_row(spec, p.params, "nmse1_est_db", summarize(m[0])));
  rows.push_back(db_row(spec, p.params, "nmse1_known_db", summarize(m[1])));
  rows.push_back(db_row(spec, p.params, "nmse1_ignorant_db", summarize(m[2])));
}

void jammer_nmse_point(const ExperimentSpec& spec, const Point& p, const StatsCache::Entry& e,
                       std::vector<ResultRow>& rows) {
  const SystemConfig& cfg = p.cfg;
  const MomentModel model = build_moment_model(cfg, e.stats, spec.moments);
  const JammerChannelEstimator estimator(cfg, e.stats, e.maps);
  const ChannelSampler sampler(e.stats);
  const PilotBook book = make_pilot_book(cfg.tau);
  const Metrics m = run_trials(spec, 4, [&](std::size_t t, std::vector<double>& out) {
    const TrialDraw d = draw_trial(spec, p, e, sampler, book, t);
    const CVector truth = rephase_jammer(d.ch.jam, d.ip.alpha);
    const InnerProductEstimate est = estimate_inner_products(d.obs, model, cfg, e.stats);
    RVector true_phase(cfg.tau - 2);
    for (int i = 0; i < cfg.tau - 2; ++i) true_phase(i) = std::arg(d.ip.alpha_bar(i + 1));
    const RVector base = asymptotic_norms(d.obs, cfg, e.stats);
    out[0] = nmse(estimator(d.obs, d.ip.alpha_bar), truth);
    out[1] = nmse(estimator(d.obs, reconstruct_alpha_bar(est.norm_sq_unused, true_phase)), truth);
    out[2] = nmse(estimator(d.obs, est.alpha_bar_hat), truth);
    out[3] = nmse(estimator(d.obs, reconstruct_alpha_bar(base, est.phase_diffs)), truth);
  });
  rows.push_back(db_row(spec, p.params, "nmse2_known_db", summarize(m[0])));
  rows.push_back(db_row(spec, p.params, "nmse2_norm_only_db", summarize(m[1])));
  rows.push_back(db_row(spec, p.params, "nmse2_est_db", summarize(m[2])));
  rows.push_back(db_row(spec, p.params, "nmse2_baseline_db", summarize(m[3])));
}

template <typename Fn>
void with_context(const Point& p, Fn&& fn) {
  try {
    fn();
  } catch (const NumericalError& e) {
    throw NumericalError(describe(p) + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(describe(p) + ": " + e.what());
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  StatsCache cache;
  std::vector<ResultRow> rows;
  for (const Point& p : expand(spec)) {
    with_context(p, [&] {
      const StatsCache::Entry& e = cache.get(p.cfg);
      switch (spec.scenario) {
        case Scenario::RocTheory: roc_theory_point(spec, p, e, rows); break;
        case Scenario::DetectionSweep: detection_sweep_point(spec, p, e, rows); break;
        case Scenario::RocCompare: roc_compare_point(spec, p, e, rows); break;
        case Scenario::InnerProductQuality: inner_product_point(spec, p, e, rows); break;
        case Scenario::UserNmse: user_nmse_point(spec, p, e, rows); break;
        case Scenario::JammerNmse: jammer_nmse_point(spec, p, e, rows); break;
      }
    });
  }
  return rows;
}

std::vector<ResultRow> run_theory(const ExperimentSpec& spec) {
  spec.validate();
  StatsCache cache;
  std::vector<ResultRow> rows;
  for (const Point& p : expand(spec)) {
    with_context(p, [&] {
      const StatsCache::Entry& e = cache.get(p.cfg);
      const DetectionTheory t = detection_theory(spec, p, e.stats);
      for (double g : gamma_grid(spec, t)) {
        const Params pr = with(p.params, "gamma", g);
        rows.push_back(make_row(spec, pr, "pfa_theory", pfa(g, t.h0), 0, 0.0));
        rows.push_back(make_row(spec, pr, "pd_theory", t.pd(g), 0, 0.0));
      }
    });
  }
  return rows;
}

std::vector<ResultRow> run_thresholds(const ExperimentSpec& spec) {
  spec.validate();
  StatsCache cache;
  std::vector<ResultRow> rows;
  for (const Point& p : expand(spec)) {
    with_context(p, [&] {
      const StatsCache::Entry& e = cache.get(p.cfg);
      const DetectionTheory t = detection_theory(spec, p, e.stats);
      for (double target : spec.sweep.pfa) {
        const double g = threshold_for_pfa(target, t.h0);
        const Params pr = with(p.params, "pfa", target);
        rows.push_back(make_row(spec, pr, "threshold", g, 0, 0.0));
        rows.push_back(make_row(spec, pr, "pd_theory", t.pd(g), 0, 0.0));
      }
    });
  }
  return rows;
}

namespace {

PowerPoint point_db(double snr_db, double jnr_db) {
  PowerPoint p;
  p.snr_db = snr_db;
  p.jnr_db = jnr_db;
  p.pilot_power = db_to_linear(snr_db);
  p.jammer_power = db_to_linear(jnr_db);
  return p;
}

const std::vector<double> kPfaGrid = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1,
                                      0.2,   0.3,   0.4,   0.5,  0.6,  0.8,  0.9};

ExperimentSpec detection_base() {
  ExperimentSpec s;
  s.cfg.n_bs = 4;
  s.cfg.n_ue = 2;
  s.trials = 10000;
  s.sweep.pfa = kPfaGrid;
  return s;
}

ExperimentSpec estimation_base(int n_bs, int n_ue) {
  ExperimentSpec s;
  s.cfg.tau = 4;
  s.cfg.n_bs = n_bs;
  s.cfg.n_ue = n_ue;
  s.trials = 1000;
  s.sweep.tau = {4};
  s.sweep.rho = {0.2, 0.8};
  return s;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"};
}

ExperimentSpec preset(const std::string& name) {
  ExperimentSpec s;
  if (name == "fig2") {
    s = detection_base();
    s.scenario = Scenario::RocTheory;
    s.sweep.tau = {2, 5};
    s.sweep.rho = {0.9};
    s.sweep.powers = {point_db(0.0, 0.0)};
    s.sweep.gamma_count = 41;
  } else if (name == "fig3") {
    s = detection_base();
    s.scenario = Scenario::DetectionSweep;
    s.sweep.tau = {2};
    s.sweep.rho = {0.9};
    s.sweep.powers = {point_db(0.0, 0.0), point_db(0.0, 5.0), point_db(0.0, 10.0)};
  } else if (name == "fig4") {
    s = detection_base();
    s.scenario = Scenario::DetectionSweep;
    s.sweep.tau = {2};
    s.sweep.rho = {0.2, 0.5, 0.8};
    s.sweep.powers = {point_db(0.0, 0.0)};
  } else if (name == "fig5") {
    s = detection_base();
    s.scenario = Scenario::RocCompare;
    s.sweep.tau = {5};
    s.sweep.rho = {0.0, 0.5, 1.0};
    s.sweep.powers = {point_db(0.0, 2.0)};
  } else if (name == "fig6") {
    // JSR 0 dB: pilot and jammer powers move together along the JNR axis.
    s = estimation_base(64, 16);
    s.scenario = Scenario::InnerProductQuality;
    for (double j : {-5.0, 0.0, 5.0, 10.0}) s.sweep.powers.push_back(point_db(j, j));
  } else if (name == "fig7") {
    s = estimation_base(48, 12);
    s.scenario = Scenario::UserNmse;
    for (double p : {-5.0, 0.0, 5.0, 10.0}) s.sweep.powers.push_back(point_db(p, p));
  } else if (name == "fig8") {
    s = estimation_base(48, 12);
    s.scenario = Scenario::JammerNmse;
    for (double j : {-5.0, 0.0, 5.0, 10.0}) s.sweep.powers.push_back(point_db(j, j));
  } else {
    throw ValidationError("unknown preset '" + name + "' (fig2 .. fig8)");
  }
  s.cfg.tau = s.sweep.tau.front();
  s.cfg.set_rho(s.sweep.rho.front());
  s.validate();
  return s;
}

}  // namespace jamsense
