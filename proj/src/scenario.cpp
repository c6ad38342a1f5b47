#include "radreact/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace radreact {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ScenarioError("scenario: " + what); }

double need_num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    fail(std::string("missing or non-numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

double opt_num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number()) fail(std::string("non-numeric field '") + key + "'");
  return j.at(key).get<double>();
}

Vec3 vec3_of(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 3) {
    fail(std::string("field '") + key + "' must be a 3-element array");
  }
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

Constants parse_constants(const json& root) {
  Constants k = Constants::gaussian_cgs();
  if (root.contains("constants_override")) {
    const auto& o = root.at("constants_override");
    k.c = opt_num(o, "c_cm_per_s", k.c);
    k.hbar = opt_num(o, "hbar_erg_s", k.hbar);
    k.kB = opt_num(o, "kB_erg_per_K", k.kB);
    k.e_charge = opt_num(o, "e_statC", k.e_charge);
    k.m_electron = opt_num(o, "m_electron_g", k.m_electron);
  }
  try {
    k.validate();
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return k;
}

ForceModel parse_force(const json& f) {
  const std::string type = f.value("type", "");
  if (type == "zero") return ForceModel::zero();
  if (type == "constant") return ForceModel::constant(need_num(f, "amplitude_dyn"));
  if (type == "step") {
    return ForceModel::step(need_num(f, "amplitude_dyn"), opt_num(f, "t_on_s", 0.0));
  }
  if (type == "sin_drive") {
    return ForceModel::sin_drive(need_num(f, "amplitude_dyn"),
                                 need_num(f, "omega_per_s"),
                                 opt_num(f, "phase_rad", 0.0));
  }
  if (type == "gaussian_pulse") {
    return ForceModel::gaussian_pulse(need_num(f, "amplitude_dyn"),
                                      need_num(f, "t0_s"),
                                      need_num(f, "sigma_s"));
  }
  if (type == "tabulated") {
    if (!f.contains("values_dyn") || !f.at("values_dyn").is_array()) {
      fail("tabulated force needs a 'values_dyn' array");
    }
    std::vector<double> vals;
    for (const auto& v : f.at("values_dyn")) vals.push_back(v.get<double>());
    return ForceModel::tabulated(opt_num(f, "t0_s", 0.0), need_num(f, "dt_s"),
                                 std::move(vals));
  }
  fail("unknown force type '" + type + "'");
}

const std::set<std::string> kNonRelModels = {"newton", "ald", "fo", "fo_sharp",
                                             "series", "oscillator"};
const std::set<std::string> kRelModels = {"rel_fo_covariant", "rel_fo_3vector",
                                          "ll_type"};
const std::set<std::string> kNoiseModels = {"fo", "oscillator"};

} // namespace

Scenario parse_scenario_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const std::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }

  Scenario sc;
  if (!root.contains("version")) fail("missing 'version'");
  sc.version = root.at("version").get<int>();
  if (sc.version != 1) fail("unsupported scenario version");
  sc.name = root.value("name", "");
  if (sc.name.empty()) fail("missing 'name'");
  sc.model = root.value("model", "");

  sc.constants = parse_constants(root);

  if (root.contains("particle")) {
    const auto& p = root.at("particle");
    std::optional<double> cutoff;
    if (p.contains("cutoff_omega_per_s")) cutoff = need_num(p, "cutoff_omega_per_s");
    try {
      sc.particle = ParticleParams::make(need_num(p, "charge_statC"),
                                         need_num(p, "mass_g"), cutoff,
                                         sc.constants);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  } else {
    sc.particle = ParticleParams::electron(sc.constants);
  }

  const bool is_nonrel = kNonRelModels.count(sc.model) > 0;
  const bool is_rel = kRelModels.count(sc.model) > 0;
  if (!sc.model.empty() && !is_nonrel && !is_rel) {
    fail("unknown model '" + sc.model + "'");
  }

  if (sc.model == "series") {
    sc.series_order = static_cast<int>(opt_num(root, "series_order", 0.0));
    if (sc.series_order < 3 || sc.series_order > 30) {
      fail("series_order must lie in [3, 30]");
    }
  }
  if (sc.model == "oscillator") {
    sc.spring_k = need_num(root, "spring_k_dyn_per_cm");
    if (!(sc.spring_k > 0.0)) fail("oscillator spring constant must be positive");
  }

  if (root.contains("force")) {
    try {
      sc.force = parse_force(root.at("force"));
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (root.contains("fields")) {
    Scenario::Fields f;
    f.E = vec3_of(root.at("fields"), "E_statV_per_cm");
    f.B = vec3_of(root.at("fields"), "B_G");
    sc.fields = f;
  }

  // dimensionality: exactly one of force/fields, matching the model family
  if (is_nonrel) {
    if (!sc.force || sc.fields) fail("nonrelativistic models take a 'force' block only");
  } else if (is_rel) {
    if (!sc.fields || sc.force) fail("relativistic models take a 'fields' block only");
  } else {
    // survey-only scenario
    if (root.contains("poles_survey") && (sc.force || sc.fields)) {
      fail("a survey-only scenario takes neither force nor fields");
    }
  }

  if (root.contains("integrator")) {
    const auto& it = root.at("integrator");
    sc.integrator.tol = opt_num(it, "tol", 1e-10);
    if (!(sc.integrator.tol > 0.0)) fail("integrator tol must be positive");
    if (it.contains("dt_s")) sc.integrator.dt_s = need_num(it, "dt_s");
    if (it.contains("t_span_s")) {
      const auto& s = it.at("t_span_s");
      if (!s.is_array() || s.size() != 2) fail("t_span_s must be [t0, t1]");
      sc.integrator.t_span_s = {{s[0].get<double>(), s[1].get<double>()}};
    }
    if (it.contains("tau_span_s")) {
      const auto& s = it.at("tau_span_s");
      if (!s.is_array() || s.size() != 2) fail("tau_span_s must be [tau0, tau1]");
      sc.integrator.tau_span_s = {{s[0].get<double>(), s[1].get<double>()}};
    }
    if (it.contains("sample_dt_s")) sc.integrator.sample_dt_s = need_num(it, "sample_dt_s");
    sc.integrator.burn_in_s = opt_num(it, "burn_in_s", 0.0);
    sc.integrator.record_stride =
        static_cast<std::size_t>(opt_num(it, "record_stride", 1.0));
    if (it.contains("branch")) {
      const std::string b = it.at("branch").get<std::string>();
      if (b == "bounded_analytic") {
        sc.integrator.bounded_analytic = true;
      } else if (b != "extended") {
        fail("integrator branch must be 'extended' or 'bounded_analytic'");
      }
    }
    if (it.contains("radiation_reaction")) {
      sc.integrator.radiation_reaction = it.at("radiation_reaction").get<bool>();
    }
  }

  if (root.contains("initial")) {
    const auto& in = root.at("initial");
    sc.initial.x_cm = opt_num(in, "x_cm", 0.0);
    sc.initial.v_cm_per_s = opt_num(in, "v_cm_per_s", 0.0);
    if (in.contains("a_cm_per_s2")) sc.initial.a_cm_per_s2 = need_num(in, "a_cm_per_s2");
    sc.initial.steady_state = in.value("steady_state", false);
    sc.initial.position_cm = vec3_of(in, "position_cm");
    sc.initial.v_over_c = vec3_of(in, "v_over_c");
  }

  if (root.contains("noise")) {
    if (kNoiseModels.count(sc.model) == 0) {
      fail("noise is permitted only for fo and oscillator runs");
    }
    const auto& nj = root.at("noise");
    const std::string type = nj.value("type", "white_fdt");
    const double T = need_num(nj, "temperature_K");
    const auto seed = static_cast<std::uint64_t>(opt_num(nj, "seed", 0.0));
    double damping;
    if (sc.model == "oscillator") {
      const double required = sc.spring_k * tau_e(sc.particle, sc.constants);
      damping = opt_num(nj, "damping_g_per_s", required);
      if (std::abs(damping - required) > 1e-9 * required) {
        fail("oscillator noise damping must equal K tau_e");
      }
    } else {
      damping = need_num(nj, "damping_g_per_s");
    }
    try {
      if (type == "white_fdt") {
        sc.noise = NoiseSpec::white(T, damping, seed);
      } else if (type == "exp_correlated") {
        std::optional<double> tc;
        if (nj.contains("tau_c_s")) tc = need_num(nj, "tau_c_s");
        sc.noise = NoiseSpec::exp_correlated(T, damping, tc, seed, sc.constants);
      } else {
        fail("unknown noise type '" + type + "'");
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (!sc.integrator.dt_s) fail("stochastic runs need integrator.dt_s");
  }

  if (root.contains("ensemble")) {
    if (!sc.noise) fail("ensemble block needs a noise block");
    const auto& e = root.at("ensemble");
    EnsembleConfig cfg;
    cfg.n_members = static_cast<std::size_t>(need_num(e, "n_members"));
    if (cfg.n_members < 1) fail("ensemble needs n_members >= 1");
    cfg.base_seed = static_cast<std::uint64_t>(opt_num(e, "base_seed", 0.0));
    sc.ensemble = cfg;
    sc.keep_members = e.value("keep_members", false);
  }

  if (root.contains("poles_survey")) {
    for (const auto& m : root.at("poles_survey")) {
      sc.poles_survey.push_back(m.get<std::string>());
    }
  }
  if (sc.model.empty() && sc.poles_survey.empty()) {
    fail("scenario needs a model or a poles_survey");
  }

  if (root.contains("outputs")) {
    const auto& o = root.at("outputs");
    sc.outputs.trajectory = o.value("trajectory", "");
    sc.outputs.report = o.value("report", "");
  }
  if (!sc.model.empty() && sc.outputs.trajectory.empty()) {
    fail("dynamical runs need outputs.trajectory");
  }
  if (sc.outputs.report.empty()) sc.outputs.report = sc.name + ".report.json";

  // span sanity for dynamical runs
  if (is_nonrel && !sc.integrator.t_span_s) fail("nonrelativistic runs need integrator.t_span_s");
  if (sc.model == "rel_fo_3vector" && !sc.integrator.t_span_s) {
    fail("rel_fo_3vector needs integrator.t_span_s");
  }
  if ((sc.model == "rel_fo_covariant" || sc.model == "ll_type") &&
      !sc.integrator.tau_span_s) {
    fail("covariant runs need integrator.tau_span_s");
  }

  sc.canonical_json = root.dump();
  return sc;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) fail("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  return parse_scenario_text(text);
}

} // namespace radreact
