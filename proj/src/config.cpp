// SPDX-License-Identifier: Apache-2.0

#include "jamsense/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace jamsense {

namespace {

using json = nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + (where.empty() ? key : where + "." + key) + "' has the wrong type");
  }
}

template <typename T>
void read(const json& obj, const std::string& key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

template <typename T>
std::vector<T> read_list(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array()) return {get<T>(obj, key, where)};
  std::vector<T> out;
  try {
    for (const auto& e : v) out.push_back(e.get<T>());
  } catch (const json::exception&) {
    throw ConfigError("key '" + where + "." + key + "' must be a list of numbers");
  }
  if (out.empty()) throw ConfigError("key '" + where + "." + key + "' must not be empty");
  return out;
}

BeamSelection beam_selection_from_string(const std::string& s) {
  if (s == "first") return BeamSelection::First;
  if (s == "centered") return BeamSelection::Centered;
  throw ConfigError("key 'system.beam_selection' must be 'first' or 'centered'");
}

ScaleRule scale_rule_from_string(const std::string& s) {
  if (s == "auto") return ScaleRule::Auto;
  if (s == "harmonic_mean") return ScaleRule::HarmonicMean;
  if (s == "min_weight") return ScaleRule::MinWeight;
  throw ConfigError("key 'series.scale' must be 'auto', 'harmonic_mean' or 'min_weight'");
}

PowerPoint make_point(double snr_db, double jnr_db) {
  PowerPoint p;
  p.snr_db = snr_db;
  p.jnr_db = jnr_db;
  p.pilot_power = db_to_linear(snr_db);
  p.jammer_power = db_to_linear(jnr_db);
  return p;
}

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  check_keys(doc, "", {"scenario", "system", "sweep", "series", "detection", "estimation",
                       "trials", "seed", "workers", "output"});
  if (!doc.contains("scenario")) throw ConfigError("missing required key 'scenario'");

  ExperimentSpec spec;
  try {
    spec.scenario = scenario_from_string(get<std::string>(doc, "scenario", ""));
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("key 'scenario': ") + e.what());
  }
  if (doc.contains("trials")) {
    const long long t = get<long long>(doc, "trials", "");
    if (t < 1) throw ConfigError("key 'trials' must be >= 1");
    spec.trials = static_cast<int>(t);
  }
  read(doc, "seed", "", spec.seed);
  read(doc, "workers", "", spec.workers);
  read(doc, "output", "", spec.output_path);

  SystemConfig& cfg = spec.cfg;
  double snr_db = 0.0;
  double jnr_db = 0.0;
  bool has_jsr = false;
  double jsr_db = 0.0;
  if (doc.contains("system")) {
    const json& s = doc["system"];
    check_keys(s, "system",
               {"m_bs", "m_ue", "m_jm", "users", "tau", "n_bs", "n_ue", "noise_variance", "rho",
                "rho_bs", "rho_ue", "rho_jm", "epsilon", "snr_db", "jnr_db", "jsr_db",
                "beam_selection"});
    read(s, "m_bs", "system", cfg.m_bs);
    read(s, "m_ue", "system", cfg.m_ue);
    read(s, "m_jm", "system", cfg.m_jm);
    read(s, "users", "system", cfg.users);
    read(s, "tau", "system", cfg.tau);
    read(s, "n_bs", "system", cfg.n_bs);
    read(s, "n_ue", "system", cfg.n_ue);
    read(s, "noise_variance", "system", cfg.noise_variance);
    if (s.contains("rho")) cfg.set_rho(get<double>(s, "rho", "system"));
    read(s, "rho_bs", "system", cfg.rho_bs);
    read(s, "rho_ue", "system", cfg.rho_ue);
    read(s, "rho_jm", "system", cfg.rho_jm);
    read(s, "epsilon", "system", cfg.epsilon);
    read(s, "snr_db", "system", snr_db);
    read(s, "jnr_db", "system", jnr_db);
    if (s.contains("jsr_db")) {
      has_jsr = true;
      jsr_db = get<double>(s, "jsr_db", "system");
    }
    if (s.contains("beam_selection")) {
      cfg.beam_selection = beam_selection_from_string(get<std::string>(s, "beam_selection", "system"));
    }
  }
  cfg.seed = spec.seed;

  SweepSpec& sw = spec.sweep;
  std::vector<double> snr_list{snr_db};
  std::vector<double> jnr_list{jnr_db};
  bool swept_snr = false;
  bool swept_jnr = false;
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    check_keys(s, "sweep", {"tau", "rho", "snr_db", "jnr_db", "gamma", "pfa"});
    if (s.contains("tau")) sw.tau = read_list<int>(s, "tau", "sweep");
    if (s.contains("rho")) sw.rho = read_list<double>(s, "rho", "sweep");
    if (s.contains("snr_db")) {
      snr_list = read_list<double>(s, "snr_db", "sweep");
      swept_snr = true;
    }
    if (s.contains("jnr_db")) {
      jnr_list = read_list<double>(s, "jnr_db", "sweep");
      swept_jnr = true;
    }
    if (s.contains("pfa")) sw.pfa = read_list<double>(s, "pfa", "sweep");
    if (s.contains("gamma")) {
      const json& g = s["gamma"];
      if (g.is_object()) {
        check_keys(g, "sweep.gamma", {"start", "stop", "count"});
        int count = sw.gamma_count;
        read(g, "count", "sweep.gamma", count);
        if (count < 2) throw ConfigError("key 'sweep.gamma.count' must be >= 2");
        sw.gamma_count = count;
        if (g.contains("start") || g.contains("stop")) {
          if (!g.contains("start") || !g.contains("stop")) {
            throw ConfigError("key 'sweep.gamma' needs both 'start' and 'stop'");
          }
          const double a = get<double>(g, "start", "sweep.gamma");
          const double b = get<double>(g, "stop", "sweep.gamma");
          for (int i = 0; i < count; ++i) sw.gamma.push_back(a + (b - a) * i / (count - 1));
        }
      } else {
        sw.gamma = read_list<double>(s, "gamma", "sweep");
      }
    }
  }
  if (has_jsr) {
    if (swept_snr && swept_jnr) {
      throw ConfigError("key 'system.jsr_db' conflicts with sweeping both snr_db and jnr_db");
    }
    if (swept_jnr) {
      for (double j : jnr_list) sw.powers.push_back(make_point(j - jsr_db, j));
    } else {
      for (double s : snr_list) sw.powers.push_back(make_point(s, s + jsr_db));
    }
  } else {
    for (double s : snr_list) {
      for (double j : jnr_list) sw.powers.push_back(make_point(s, j));
    }
  }
  if (sw.tau.empty()) sw.tau = {cfg.tau};
  if (sw.rho.empty()) {
    if (cfg.rho_bs != cfg.rho_ue || cfg.rho_bs != cfg.rho_jm) {
      sw.rho = {};  // keep the per-side coefficients as given
    } else {
      sw.rho = {cfg.rho_bs};
    }
  }
  if (sw.pfa.empty()) sw.pfa = {0.1};

  if (doc.contains("series")) {
    const json& s = doc["series"];
    check_keys(s, "series", {"terms", "adaptive", "max_terms", "tail_tolerance", "scale",
                             "phase_type_fallback"});
    read(s, "terms", "series", spec.series.terms);
    read(s, "adaptive", "series", spec.series.adaptive);
    read(s, "max_terms", "series", spec.series.max_terms);
    read(s, "tail_tolerance", "series", spec.series.tail_tolerance);
    read(s, "phase_type_fallback", "series", spec.series.phase_type_fallback);
    if (s.contains("scale")) {
      spec.series.scale = scale_rule_from_string(get<std::string>(s, "scale", "series"));
    }
    if (spec.series.max_terms < spec.series.terms) spec.series.max_terms = spec.series.terms;
  }
  if (doc.contains("detection")) {
    const json& s = doc["detection"];
    check_keys(s, "detection", {"alpha_mode", "theory_alpha_draws"});
    if (s.contains("alpha_mode")) {
      try {
        spec.alpha = alpha_choice_from_string(get<std::string>(s, "alpha_mode", "detection"));
      } catch (const ConfigError&) {
        throw;
      } catch (const ValidationError& e) {
        throw ConfigError(std::string("key 'detection.alpha_mode': ") + e.what());
      }
    }
    read(s, "theory_alpha_draws", "detection", spec.theory_alpha_draws);
  }
  if (doc.contains("estimation")) {
    const json& s = doc["estimation"];
    check_keys(s, "estimation", {"used_pilot_offset", "exact_correlation"});
    read(s, "used_pilot_offset", "estimation", spec.moments.used_pilot_offset);
    read(s, "exact_correlation", "estimation", spec.moments.exact_correlation);
  }

  try {
    spec.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace jamsense
