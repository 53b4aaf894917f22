// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jamsense/config.hpp"
#include "jamsense/csv.hpp"
#include "jamsense/experiments.hpp"

using namespace jamsense;

namespace {

ExperimentSpec tiny(Scenario s) {
  ExperimentSpec spec;
  spec.scenario = s;
  spec.cfg.m_bs = 8;
  spec.cfg.m_ue = 4;
  spec.cfg.n_bs = 4;
  spec.cfg.n_ue = 2;
  spec.cfg.tau = 3;
  spec.trials = 60;
  spec.sweep.tau = {3};
  spec.sweep.rho = {0.3, 0.7};
  PowerPoint p;
  p.snr_db = 0.0;
  p.jnr_db = 3.0;
  p.pilot_power = 1.0;
  p.jammer_power = db_to_linear(3.0);
  spec.sweep.powers = {p};
  spec.sweep.pfa = {0.1, 0.01};
  spec.sweep.gamma_count = 5;
  return spec;
}

double param(const ResultRow& r, const std::string& name) {
  for (const auto& [n, v] : r.params) {
    if (n == name) return v;
  }
  return std::nan("");
}

}  // namespace

TEST_CASE("scenario and alpha names round trip") {
  for (Scenario s : {Scenario::RocTheory, Scenario::RocCompare, Scenario::DetectionSweep,
                     Scenario::InnerProductQuality, Scenario::UserNmse, Scenario::JammerNmse}) {
    CHECK(scenario_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(scenario_from_string("nope"), ValidationError);
  CHECK(alpha_choice_from_string("resample") == AlphaChoice::Resample);
}

TEST_CASE("results do not depend on the worker count") {
  for (Scenario s : {Scenario::RocTheory, Scenario::RocCompare, Scenario::DetectionSweep,
                     Scenario::InnerProductQuality, Scenario::UserNmse, Scenario::JammerNmse}) {
    ExperimentSpec a = tiny(s);
    a.workers = 1;
    ExperimentSpec b = a;
    b.workers = 8;
    CAPTURE(to_string(s));
    CHECK(format_csv(run_experiment(a)) == format_csv(run_experiment(b)));
  }
}

TEST_CASE("roc_theory rows carry theory and empirical values per grid point") {
  const auto rows = run_experiment(tiny(Scenario::RocTheory));
  // two rho values x five grid points x four metrics
  REQUIRE(rows.size() == 40);
  CHECK(rows[0].metric == "pfa_theory");
  CHECK(rows[0].value == doctest::Approx(1.0));  // gamma = 0
  CHECK(rows[1].metric == "pfa_emp");
  CHECK(rows[1].trials == 60);
  CHECK(param(rows[0], "rho") == doctest::Approx(0.3));
  CHECK(param(rows.back(), "rho") == doctest::Approx(0.7));
}

TEST_CASE("calibrated thresholds reproduce their targets through the theory path") {
  const ExperimentSpec spec = tiny(Scenario::DetectionSweep);
  const auto rows = run_thresholds(spec);
  REQUIRE(rows.size() == 8);  // two rho values x two targets x (threshold, pd_theory)
  CHECK(rows[0].metric == "threshold");
  ExperimentSpec probe = spec;
  probe.sweep.rho = {0.3};
  probe.sweep.gamma = {rows[0].value};
  const auto t = run_theory(probe);
  REQUIRE(t.size() == 2);
  CHECK(t[0].metric == "pfa_theory");
  CHECK(std::abs(t[0].value - 0.1) <= 1e-6);
  CHECK(t[1].value == doctest::Approx(rows[1].value));
}

TEST_CASE("estimation scenarios emit dB metrics with standard errors") {
  const auto rows = run_experiment(tiny(Scenario::UserNmse));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].metric == "nmse1_est_db");
  CHECK(rows[2].metric == "nmse1_ignorant_db");
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.value));
    CHECK(r.std_error > 0.0);
    CHECK(r.trials == 60);
  }
  const auto ip = run_experiment(tiny(Scenario::InnerProductQuality));
  REQUIRE(ip.size() == 8);
  CHECK(ip[3].metric == "cos");
  CHECK(ip[3].value <= 1.0);
}

TEST_CASE("sweep order is tau, then rho, then power point") {
  ExperimentSpec spec = tiny(Scenario::JammerNmse);
  spec.trials = 5;
  spec.sweep.tau = {3, 4};
  PowerPoint p2 = spec.sweep.powers[0];
  p2.jnr_db = 6.0;
  p2.jammer_power = db_to_linear(6.0);
  spec.sweep.powers.push_back(p2);
  const auto rows = run_experiment(spec);
  REQUIRE(rows.size() == 2 * 2 * 2 * 4);
  CHECK(param(rows[0], "tau") == 3);
  CHECK(param(rows[4], "jnr_db") == 6.0);
  CHECK(param(rows[8], "rho") == doctest::Approx(0.7));
  CHECK(param(rows[16], "tau") == 4);
}

TEST_CASE("invalid specs are rejected before running") {
  ExperimentSpec spec = tiny(Scenario::RocTheory);
  spec.trials = 0;
  CHECK_THROWS_AS(run_experiment(spec), ValidationError);
  spec = tiny(Scenario::RocTheory);
  spec.sweep.tau = {1};
  CHECK_THROWS_AS(run_experiment(spec), ValidationError);
  spec = tiny(Scenario::DetectionSweep);
  spec.sweep.pfa = {1.5};
  CHECK_THROWS_AS(run_experiment(spec), ValidationError);
}

TEST_CASE("failures name the sweep point") {
  ExperimentSpec bad = tiny(Scenario::DetectionSweep);
  bad.cfg.noise_variance = 0.0;  // the null distribution needs noise
  try {
    run_experiment(bad);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("sweep point 0") != std::string::npos);
  }
}

TEST_CASE("config parsing") {
  const std::string text = R"({
    "scenario": "user_nmse",
    "system": {"m_bs": 8, "m_ue": 4, "n_bs": 4, "n_ue": 2, "tau": 3, "jsr_db": 3},
    "sweep": {"rho": [0.2, 0.8], "snr_db": [-5, 5]},
    "estimation": {"used_pilot_offset": true},
    "trials": 50, "seed": 9, "workers": 2
  })";
  const ExperimentSpec s = parse_config(text);
  CHECK(s.scenario == Scenario::UserNmse);
  CHECK(s.trials == 50);
  CHECK(s.seed == 9);
  CHECK(s.workers == 2);
  CHECK(s.moments.used_pilot_offset);
  REQUIRE(s.sweep.powers.size() == 2);
  CHECK(s.sweep.powers[1].jnr_db == doctest::Approx(8.0));
  CHECK(s.sweep.powers[1].pilot_power == doctest::Approx(db_to_linear(5.0)));
  CHECK(s.sweep.rho.size() == 2);
  CHECK(s.sweep.tau == std::vector<int>{3});
}

TEST_CASE("config errors are reported") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"system": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "roc_theory", "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "roc_theory", "system": {"tau": "x"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "roc_theory", "trials": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "roc_theory", "system": {"tau": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "roc_theory", "system": {"jsr_db": 0},
                                   "sweep": {"snr_db": [0], "jnr_db": [0]}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.json"), ConfigError);
}

TEST_CASE("gamma grid from a range") {
  const ExperimentSpec s = parse_config(
      R"({"scenario": "roc_theory", "sweep": {"gamma": {"start": 0, "stop": 4, "count": 5}}})");
  CHECK(s.sweep.gamma == std::vector<double>{0, 1, 2, 3, 4});
}

TEST_CASE("CSV format and round trip") {
  ResultRow r;
  r.scenario = "user_nmse";
  r.params = {{"tau", 4}, {"rho", 0.2}};
  r.metric = "nmse1_est_db";
  r.value = -3.14159265358979;
  r.trials = 1000;
  r.std_error = 0.0123456789012;
  ResultRow z = r;
  z.value = -std::numeric_limits<double>::infinity();
  const std::string text = format_csv({r, z});
  CHECK(text.substr(0, text.find('\n')) == "scenario,tau,rho,metric,value,trials,std_error");
  CHECK(text.back() == '\n');
  const CsvTable t = parse_csv(text);
  REQUIRE(t.rows.size() == 2);
  CHECK(std::stod(t.rows[0][4]) == doctest::Approx(r.value).epsilon(1e-9));
  CHECK(std::stod(t.rows[0][6]) == doctest::Approx(r.std_error).epsilon(1e-9));
  CHECK(t.rows[1][4] == "-inf");

  const std::string path = "jamsense_test_rows.csv";
  write_csv({r}, path);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::remove(path.c_str());
  int lines = 0;
  for (char c : ss.str()) lines += c == '\n';
  CHECK(lines == 2);
  CHECK_THROWS_AS(write_csv({}, path), ValidationError);
  CHECK_THROWS(write_csv({r}, "/nonexistent/dir/out.csv"));
}

namespace {

struct PresetRow {
  const char* name;
  Scenario scenario;
  std::vector<int> tau;
  std::vector<double> rho;
  int n_bs, n_ue;
  std::vector<double> snr_db, jnr_db;
  int trials;
};

}  // namespace

TEST_CASE("presets match their figure parameters") {
  const std::vector<PresetRow> table = {
      {"fig2", Scenario::RocTheory, {2, 5}, {0.9}, 4, 2, {0}, {0}, 10000},
      {"fig3", Scenario::DetectionSweep, {2}, {0.9}, 4, 2, {0, 0, 0}, {0, 5, 10}, 10000},
      {"fig4", Scenario::DetectionSweep, {2}, {0.2, 0.5, 0.8}, 4, 2, {0}, {0}, 10000},
      {"fig5", Scenario::RocCompare, {5}, {0.0, 0.5, 1.0}, 4, 2, {0}, {2}, 10000},
      {"fig6", Scenario::InnerProductQuality, {4}, {0.2, 0.8}, 64, 16, {-5, 0, 5, 10}, {-5, 0, 5, 10}, 1000},
      {"fig7", Scenario::UserNmse, {4}, {0.2, 0.8}, 48, 12, {-5, 0, 5, 10}, {-5, 0, 5, 10}, 1000},
      {"fig8", Scenario::JammerNmse, {4}, {0.2, 0.8}, 48, 12, {-5, 0, 5, 10}, {-5, 0, 5, 10}, 1000},
  };
  CHECK(preset_names().size() == table.size());
  for (const auto& row : table) {
    CAPTURE(row.name);
    const ExperimentSpec code = preset(row.name);
    const ExperimentSpec file = load_config(std::string(JAMSENSE_PRESET_DIR) + "/" + row.name + ".json");
    for (const ExperimentSpec* s : {&code, &file}) {
      CHECK(s->scenario == row.scenario);
      CHECK(s->sweep.tau == row.tau);
      CHECK(s->sweep.rho == row.rho);
      CHECK(s->cfg.m_bs == 64);
      CHECK(s->cfg.n_bs == row.n_bs);
      CHECK(s->cfg.n_ue == row.n_ue);
      CHECK(s->trials == row.trials);
      CHECK(s->alpha == AlphaChoice::Nominal);
      REQUIRE(s->sweep.powers.size() == row.snr_db.size());
      for (std::size_t i = 0; i < row.snr_db.size(); ++i) {
        CHECK(s->sweep.powers[i].snr_db == row.snr_db[i]);
        CHECK(s->sweep.powers[i].jnr_db == row.jnr_db[i]);
        CHECK(s->sweep.powers[i].jammer_power == doctest::Approx(db_to_linear(row.jnr_db[i])));
      }
    }
    if (row.scenario == Scenario::DetectionSweep || row.scenario == Scenario::RocCompare) {
      CHECK(code.sweep.pfa == file.sweep.pfa);
    }
  }
  CHECK_THROWS_AS(preset("fig9"), ValidationError);
}
