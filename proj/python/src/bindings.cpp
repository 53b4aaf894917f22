// SPDX-License-Identifier: Apache-2.0

#include <memory>
#include <optional>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jamsense/config.hpp"
#include "jamsense/csv.hpp"
#include "jamsense/detection.hpp"
#include "jamsense/estimation.hpp"
#include "jamsense/experiments.hpp"

namespace py = pybind11;
using namespace jamsense;

namespace {

// Beam maps, statistics and lazily built estimators for one configuration.
class Model {
 public:
  explicit Model(const SystemConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    maps_ = build_beam_maps(cfg_);
    stats_ = build_statistics(cfg_, maps_);
    sampler_ = std::make_unique<ChannelSampler>(stats_);
  }

  const SystemConfig& config() const { return cfg_; }
  const BeamMaps& maps() const { return maps_; }
  const ChannelStatistics& stats() const { return stats_; }

  py::dict simulate(std::uint64_t seed, std::uint64_t trial, bool jammer_present) const {
    Rng rng = make_stream(seed, 0, 0, trial);
    const InnerProducts ip =
        inner_products(make_pilot_book(cfg_.tau), sample_jamming_pilot(cfg_.tau, rng));
    const ChannelRealization ch = (*sampler_)(rng);
    const TrainingObservations obs = simulate_projected(cfg_, maps_, ip, ch, jammer_present, rng);
    py::dict d;
    d["used"] = obs.used;
    d["unused"] = obs.unused;
    d["alpha"] = ip.alpha;
    d["alpha_bar"] = ip.alpha_bar;
    d["h_user"] = ch.user;
    d["h_jam"] = ch.jam;
    return d;
  }

  const MomentModel& moments(bool offset, bool exact) {
    const int key = (offset ? 1 : 0) + (exact ? 2 : 0);
    if (!moments_[key]) {
      MomentOptions o;
      o.used_pilot_offset = offset;
      o.exact_correlation = exact;
      moments_[key] = build_moment_model(cfg_, stats_, o);
    }
    return *moments_[key];
  }

  const JammerChannelEstimator& jammer_estimator() {
    if (!jam_) jam_ = std::make_unique<JammerChannelEstimator>(cfg_, stats_, maps_);
    return *jam_;
  }

  const UserChannelEstimator& user_estimator() {
    if (!user_) user_ = std::make_unique<UserChannelEstimator>(cfg_, stats_, maps_);
    return *user_;
  }

 private:
  SystemConfig cfg_;
  BeamMaps maps_;
  ChannelStatistics stats_;
  std::unique_ptr<ChannelSampler> sampler_;
  std::optional<MomentModel> moments_[4];
  std::unique_ptr<JammerChannelEstimator> jam_;
  std::unique_ptr<UserChannelEstimator> user_;
};

TrainingObservations observations(const CVector& used, const CMatrix& unused) {
  if (used.size() != unused.rows()) {
    throw ValidationError("used and unused observations must have the same number of beams");
  }
  return TrainingObservations{used, unused};
}

py::list rows_to_python(const std::vector<ResultRow>& rows) {
  py::list out;
  for (const auto& r : rows) {
    py::dict d;
    d["scenario"] = r.scenario;
    for (const auto& [name, value] : r.params) d[py::str(name)] = value;
    d["metric"] = r.metric;
    d["value"] = r.value;
    d["trials"] = r.trials;
    d["std_error"] = r.std_error;
    out.append(d);
  }
  return out;
}

ExperimentSpec with_overrides(ExperimentSpec spec, std::optional<int> trials,
                              std::optional<std::uint64_t> seed, std::optional<int> workers) {
  if (trials) spec.trials = *trials;
  if (seed) spec.seed = *seed;
  if (workers) spec.workers = *workers;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_jamsense, m) {
  m.doc() = "Jamming detection and channel estimation for beamspace MIMO beam training";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<BeamSelection>(m, "BeamSelection")
      .value("FIRST", BeamSelection::First)
      .value("CENTERED", BeamSelection::Centered);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("m_bs", &SystemConfig::m_bs)
      .def_readwrite("m_ue", &SystemConfig::m_ue)
      .def_readwrite("m_jm", &SystemConfig::m_jm)
      .def_readwrite("users", &SystemConfig::users)
      .def_readwrite("tau", &SystemConfig::tau)
      .def_readwrite("n_bs", &SystemConfig::n_bs)
      .def_readwrite("n_ue", &SystemConfig::n_ue)
      .def_readwrite("pilot_power", &SystemConfig::pilot_power)
      .def_readwrite("jammer_power", &SystemConfig::jammer_power)
      .def_readwrite("noise_variance", &SystemConfig::noise_variance)
      .def_readwrite("rho_bs", &SystemConfig::rho_bs)
      .def_readwrite("rho_ue", &SystemConfig::rho_ue)
      .def_readwrite("rho_jm", &SystemConfig::rho_jm)
      .def_readwrite("epsilon", &SystemConfig::epsilon)
      .def_readwrite("seed", &SystemConfig::seed)
      .def_readwrite("beam_selection", &SystemConfig::beam_selection)
      .def_property_readonly("beams", &SystemConfig::beams)
      .def("set_rho", &SystemConfig::set_rho)
      .def("validate", &SystemConfig::validate);

  py::class_<Model>(m, "Model")
      .def(py::init<const SystemConfig&>(), py::arg("config"))
      .def_property_readonly("config", &Model::config)
      .def_property_readonly("user_beam_covariance",
                             [](const Model& s) { return s.stats().user_beam.matrix(); })
      .def_property_readonly("jam_beam_covariance",
                             [](const Model& s) { return s.stats().jam_beam.matrix(); })
      .def_property_readonly("jam_beam_eigenvalues",
                             [](const Model& s) { return s.stats().jam_beam_evd.eigenvalues; })
      .def("simulate", &Model::simulate, py::arg("seed") = 1, py::arg("trial") = 0,
           py::arg("jammer_present") = true,
           "Draws one training round; returns observations, inner products and channels.")
      .def(
          "lmpt_statistic",
          [](const Model& s, const CMatrix& unused) {
            return lmpt_statistic(unused, s.stats().jam_beam_evd);
          },
          py::arg("unused"))
      .def(
          "null_distribution",
          [](const Model& s) {
            return series_h0(s.stats().jam_beam_evd, s.config().noise_variance, s.config().tau);
          })
      .def(
          "alternative_distribution",
          [](const Model& s, const CVector& alpha_unused) {
            const SystemConfig& c = s.config();
            return series_h1(assemble_covariance(alpha_unused, s.stats().jam_beam, c.jammer_power,
                                                 c.noise_variance, c.tau),
                             s.stats().jam_beam);
          },
          py::arg("alpha_unused"))
      .def(
          "estimate_inner_products",
          [](Model& s, const CVector& used, const CMatrix& unused, bool offset, bool exact) {
            const InnerProductEstimate e = estimate_inner_products(
                observations(used, unused), s.moments(offset, exact), s.config(), s.stats());
            py::dict d;
            d["norm_sq_unused"] = e.norm_sq_unused;
            d["phase_diffs"] = e.phase_diffs;
            d["alpha1_norm"] = e.alpha1_norm;
            d["alpha_bar"] = e.alpha_bar_hat;
            d["flagged"] = e.flagged;
            return d;
          },
          py::arg("used"), py::arg("unused"), py::arg("used_pilot_offset") = false,
          py::arg("exact_correlation") = false)
      .def(
          "estimate_jammer_channel",
          [](Model& s, const CMatrix& unused, const CVector& alpha_bar) {
            return s.jammer_estimator()(unused, alpha_bar);
          },
          py::arg("unused"), py::arg("alpha_bar"))
      .def(
          "estimate_user_channel",
          [](Model& s, const CVector& used, double alpha1_norm) {
            return s.user_estimator()(used, alpha1_norm);
          },
          py::arg("used"), py::arg("alpha1_norm"));

  py::class_<ChiSquareMixtureSeries>(m, "ChiSquareMixture")
      .def_static(
          "build",
          [](const RVector& w, double nu) { return ChiSquareMixtureSeries::build(w, nu); },
          py::arg("weights"), py::arg("multiplicity"))
      .def("pdf", &ChiSquareMixtureSeries::pdf)
      .def("cdf", &ChiSquareMixtureSeries::cdf)
      .def("sf", &ChiSquareMixtureSeries::sf)
      .def_property_readonly("mean", &ChiSquareMixtureSeries::mean)
      .def_property_readonly("beta", &ChiSquareMixtureSeries::beta)
      .def_property_readonly("truncation", &ChiSquareMixtureSeries::truncation)
      .def_property_readonly("coefficients", &ChiSquareMixtureSeries::coeffs);

  m.def("glrt_statistic", [](const CMatrix& unused) { return glrt_statistic(unused); },
        py::arg("unused"));
  m.def("threshold_for_pfa", &threshold_for_pfa, py::arg("target"), py::arg("null"));
  m.def("nmse", &nmse, py::arg("estimate"), py::arg("truth"));
  m.def("rephase_jammer", &rephase_jammer, py::arg("h_jam"), py::arg("alpha"));
  m.def("db_to_linear", &db_to_linear);
  m.def("linear_to_db", &linear_to_db);

  m.def("preset_names", &preset_names);
  m.def(
      "run_preset",
      [](const std::string& name, std::optional<int> trials, std::optional<std::uint64_t> seed,
         std::optional<int> workers) {
        const ExperimentSpec spec = with_overrides(preset(name), trials, seed, workers);
        std::vector<ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_experiment(spec);
        }
        return rows_to_python(rows);
      },
      py::arg("name"), py::arg("trials") = py::none(), py::arg("seed") = py::none(),
      py::arg("workers") = py::none());
  m.def(
      "run_config",
      [](const std::string& text, std::optional<int> trials, std::optional<std::uint64_t> seed,
         std::optional<int> workers) {
        const ExperimentSpec spec = with_overrides(parse_config(text), trials, seed, workers);
        std::vector<ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_experiment(spec);
        }
        return rows_to_python(rows);
      },
      py::arg("config_json"), py::arg("trials") = py::none(), py::arg("seed") = py::none(),
      py::arg("workers") = py::none());
}
