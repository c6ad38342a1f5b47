#include "radreact/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>

#include <json.hpp>

#include "radreact/eom_rel.hpp"
#include "radreact/langevin.hpp"
#include "radreact/trajectory.hpp"
#include "radreact/units.hpp"

namespace radreact {

namespace {

using nlohmann::json;

std::filesystem::path resolve_out_dir(const RunOptions& opt) {
  if (!opt.out_dir.empty()) return opt.out_dir;
  if (const char* env = std::getenv("RADREACT_OUT_DIR")) {
    if (*env) return env;
  }
  return std::filesystem::current_path();
}

std::string hex_hash(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const char* verdict_name(CausalityVerdict v) {
  switch (v) {
    case CausalityVerdict::Causal: return "Causal";
    case CausalityVerdict::NonCausal: return "NonCausal";
    case CausalityVerdict::Marginal: return "Marginal";
  }
  return "?";
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::RunawayDetected: return "runaway_detected";
    case RunStatus::StepUnderflow: return "step_underflow";
    case RunStatus::Aborted: return "aborted";
  }
  return "?";
}

json pole_report_json(const PoleReport& rep) {
  json j;
  j["convention"] = RationalTransfer::kConvention;
  j["units"] = "1/tau_e";
  j["verdict"] = verdict_name(rep.verdict);
  j["max_residual"] = rep.max_residual;
  json poles = json::array();
  char buf[64];
  for (const Pole& p : rep.poles) {
    json pj;
    std::snprintf(buf, sizeof(buf), "%.12g", p.omega.real());
    pj["re"] = std::strtod(buf, nullptr);
    std::snprintf(buf, sizeof(buf), "%.12g", p.omega.imag());
    pj["im"] = std::strtod(buf, nullptr);
    pj["multiplicity"] = p.multiplicity;
    poles.push_back(pj);
  }
  j["poles"] = poles;
  json off = json::array();
  for (const auto& w : rep.offending) {
    off.push_back(json{{"re", w.real()}, {"im", w.imag()}});
  }
  j["offending"] = off;
  return j;
}

CsvTable trajectory_table(const Trajectory& traj, const Scenario& sc,
                          std::uint64_t seed) {
  CsvTable t;
  t.comments = {"radreact trajectory v1",
                "scenario: " + sc.name,
                "scenario_hash: " + hex_hash(fnv1a(sc.canonical_json)),
                "seed: " + std::to_string(seed),
                "units: t [s], x [cm], v [cm/s], a [cm/s^2], f [dyn], "
                "p [erg/s]"};
  t.columns = {"t_s", "x_cm", "v_cm_per_s", "a_cm_per_s2",
               "f_dyn", "p_fo_erg_per_s", "p_larmor_erg_per_s"};
  t.rows.reserve(traj.points.size());
  for (const auto& p : traj.points) {
    t.rows.push_back({p.t, p.x, p.v, p.a, p.f, p.p_fo, p.p_larmor});
  }
  return t;
}

CsvTable worldline_table(const Worldline& wl, const Scenario& sc) {
  CsvTable t;
  t.comments = {"radreact worldline v1",
                "scenario: " + sc.name,
                "scenario_hash: " + hex_hash(fnv1a(sc.canonical_json)),
                "units: tau,t [s], x,y,z [cm], u [cm/s]"};
  t.columns = {"tau_s", "t_s", "x_cm", "y_cm", "z_cm", "ux_cm_per_s",
               "uy_cm_per_s", "uz_cm_per_s", "gamma", "norm_drift"};
  t.rows.reserve(wl.points.size());
  for (const auto& p : wl.points) {
    t.rows.push_back({p.tau, p.t, p.pos.x, p.pos.y, p.pos.z, p.u_spatial.x,
                      p.u_spatial.y, p.u_spatial.z, p.gamma, p.norm_drift});
  }
  return t;
}

ModelNR model_from_scenario(const Scenario& sc) {
  if (sc.model == "newton") return ModelNR::newton(sc.particle);
  if (sc.model == "ald") return ModelNR::ald(sc.particle);
  if (sc.model == "fo") return ModelNR::fo(sc.particle);
  if (sc.model == "fo_sharp") return ModelNR::fo_sharp(sc.particle);
  if (sc.model == "series") return ModelNR::series(sc.particle, sc.series_order);
  if (sc.model == "oscillator") return ModelNR::oscillator(sc.particle, sc.spring_k);
  throw ScenarioError("scenario: not a nonrelativistic model: " + sc.model);
}

struct RunProducts {
  std::optional<CsvTable> trajectory;
  std::vector<std::pair<std::string, CsvTable>> extra_tables;
  RunStatus status = RunStatus::Completed;
  std::optional<double> efolding_time_s;
  json extras;  //!< merged into the report
};

RunProducts run_nonrel_deterministic(const Scenario& sc, std::uint64_t seed) {
  RunProducts out;
  const auto span = *sc.integrator.t_span_s;
  const ModelNR model = model_from_scenario(sc);

  if (sc.integrator.bounded_analytic) {
    if (sc.model != "ald") {
      throw ScenarioError("scenario: bounded_analytic branch is ALD-only");
    }
    const double dt = sc.integrator.sample_dt_s.value_or((span[1] - span[0]) / 512.0);
    const Trajectory traj = ald_bounded_trajectory(sc.particle, sc.constants,
                                                   *sc.force, span[0], span[1], dt);
    out.trajectory = trajectory_table(traj, sc, seed);
    return out;
  }

  StateNR init;
  init.t = span[0];
  init.x = sc.initial.x_cm;
  init.v = sc.initial.v_cm_per_s;
  if (sc.model == "ald") {
    if (sc.initial.steady_state) {
      init = ald_bounded_state(sc.particle, sc.constants, *sc.force, span[0]);
    } else if (sc.initial.a_cm_per_s2) {
      init.a = *sc.initial.a_cm_per_s2;
    } else {
      throw ScenarioError("scenario: ald runs need initial.a_cm_per_s2 or steady_state");
    }
  } else if (sc.initial.steady_state) {
    if (sc.model != "fo") {
      throw ScenarioError("scenario: steady_state start supported for fo and ald");
    }
    init = fo_periodic_state(sc.particle, sc.constants, *sc.force, span[0]);
  }

  IntegrateOptions iopt;
  iopt.tol = sc.integrator.tol;
  iopt.sample_dt_s = sc.integrator.sample_dt_s;
  const Trajectory traj = integrate(model, sc.constants, *sc.force, init,
                                    span[0], span[1], iopt);
  out.status = traj.status;
  out.efolding_time_s = traj.efolding_time_s;
  out.trajectory = trajectory_table(traj, sc, seed);
  return out;
}

RunProducts run_stochastic(const Scenario& sc, std::uint64_t seed) {
  RunProducts out;
  const auto span = *sc.integrator.t_span_s;
  const double dt = *sc.integrator.dt_s;
  NoiseSpec spec = *sc.noise;
  spec.seed = seed;

  StochasticOptions sopt;
  sopt.record_stride = sc.integrator.record_stride;
  sopt.burn_in_s = sc.integrator.burn_in_s;

  StateNR init;
  init.t = span[0];
  init.x = sc.initial.x_cm;
  init.v = sc.initial.v_cm_per_s;

  auto member_run = [&](std::uint64_t member_seed_value) {
    NoiseSpec ms = spec;
    ms.seed = member_seed_value;
    if (sc.model == "oscillator") {
      return langevin_oscillator(sc.particle, sc.constants, sc.spring_k, ms,
                                 init, span[0], span[1], dt, sopt)
          .trajectory;
    }
    return free_fluctuating(sc.particle, sc.constants, ms, init, span[0],
                            span[1], dt, *sc.force, sopt)
        .trajectory;
  };

  if (!sc.ensemble) {
    const Trajectory traj = member_run(seed);
    out.trajectory = trajectory_table(traj, sc, seed);
    json stats;
    stats["n_steps"] = traj.n_accepted;
    out.extras["stochastic"] = stats;
    return out;
  }

  EnsembleConfig cfg = *sc.ensemble;
  cfg.base_seed = seed;
  const EnsembleStats st = ensemble_mean(cfg, member_run);

  CsvTable t;
  t.comments = {"radreact ensemble summary v1",
                "scenario: " + sc.name,
                "scenario_hash: " + hex_hash(fnv1a(sc.canonical_json)),
                "base_seed: " + std::to_string(seed),
                "units: t [s], x [cm], v [cm/s]"};
  t.columns = {"t_s", "mean_x_cm", "mean_v_cm_per_s", "stderr_x_cm",
               "stderr_v_cm_per_s", "n"};
  for (std::size_t i = 0; i < st.t.size(); ++i) {
    t.rows.push_back({st.t[i], st.mean_x[i], st.mean_v[i], st.stderr_x[i],
                      st.stderr_v[i], static_cast<double>(st.n_members)});
  }
  out.trajectory = std::move(t);

  if (sc.keep_members) {
    for (std::size_t i = 0; i < cfg.n_members; ++i) {
      const Trajectory m = member_run(member_seed(cfg, i));
      char suffix[32];
      std::snprintf(suffix, sizeof(suffix), "_member_%04zu", i);
      out.extra_tables.emplace_back(suffix, trajectory_table(m, sc, member_seed(cfg, i)));
    }
  }

  // convergence report: ensemble mean against the deterministic FO run
  if (sc.model == "fo") {
    IntegrateOptions iopt;
    iopt.tol = sc.integrator.tol;
    iopt.sample_dt_s = (span[1] - span[0]) / 512.0;
    const ModelNR det = ModelNR::fo(sc.particle);
    const Trajectory ref = integrate(det, sc.constants, *sc.force, init,
                                     span[0], span[1], iopt);
    std::vector<double> rt, rx;
    for (const auto& p : ref.points) {
      rt.push_back(p.t);
      rx.push_back(p.x);
    }
    const std::vector<double> x_det = cubic_resample(rt, rx, st.t);
    double dev = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < st.t.size(); ++i) {
      dev = std::max(dev, std::abs(st.mean_x[i] - x_det[i]));
      scale = std::max(scale, std::abs(x_det[i] - x_det[0]));
    }
    json conv;
    conv["max_mean_deviation_cm"] = dev;
    conv["reference_scale_cm"] = scale;
    conv["n_members"] = cfg.n_members;
    out.extras["ensemble_convergence"] = conv;
  }
  return out;
}

RunProducts run_relativistic(const Scenario& sc) {
  RunProducts out;
  const auto& f = *sc.fields;
  const FieldTensor F{f.E, f.B};
  const Constants& k = sc.constants;

  RelIntegrateOptions ropt;
  ropt.tol = sc.integrator.tol;
  ropt.sample_dt = sc.integrator.sample_dt_s;
  ropt.include_radiation = sc.integrator.radiation_reaction;
  ropt.model = sc.model == "ll_type" ? RelModel::LLType : RelModel::FoCovariant;

  Worldline wl;
  if (sc.model == "rel_fo_3vector") {
    const auto span = *sc.integrator.t_span_s;
    wl = integrate_lab_time(sc.particle, k, f.E, f.B, sc.initial.position_cm,
                            sc.initial.v_over_c * k.c, span[0], span[1], ropt);
  } else {
    const auto span = *sc.integrator.tau_span_s;
    const Vec3 v = sc.initial.v_over_c * k.c;
    const double beta2 = v.dot(v) / (k.c * k.c);
    if (beta2 >= 1.0) throw ScenarioError("scenario: |v| >= c");
    const double gamma = 1.0 / std::sqrt(1.0 - beta2);
    FourState init;
    init.tau = span[0];
    init.x = {{0.0, sc.initial.position_cm.x, sc.initial.position_cm.y,
               sc.initial.position_cm.z}};
    init.u = {{gamma * k.c, gamma * v.x, gamma * v.y, gamma * v.z}};
    wl = integrate_proper_time(sc.particle, k, F, init, span[0], span[1], ropt);
  }
  out.status = wl.status;
  out.trajectory = worldline_table(wl, sc);
  json rel;
  rel["max_norm_drift"] = wl.max_norm_drift;
  rel["n_accepted"] = wl.n_accepted;
  out.extras["relativistic"] = rel;
  return out;
}

} // namespace

PoleReport poles_for_model(const std::string& name, const ParticleParams& p,
                           const Constants& k, double omega0_tau) {
  ModelNR model = ModelNR::newton(p);
  if (name == "newton") {
    model = ModelNR::newton(p);
  } else if (name == "ald") {
    model = ModelNR::ald(p);
  } else if (name == "fo") {
    model = ModelNR::fo(p);
  } else if (name == "fo_sharp") {
    model = ModelNR::fo_sharp(p);
  } else if (name.rfind("series:", 0) == 0) {
    model = ModelNR::series(p, std::atoi(name.c_str() + 7));
  } else if (name == "oscillator") {
    const double tau = tau_e(p, k);
    const double omega0 = omega0_tau / tau;
    model = ModelNR::oscillator(p, p.mass_renormalized * omega0 * omega0);
  } else {
    throw ScenarioError("poles: unknown model '" + name + "'");
  }
  return find_poles(susceptibility_of(model, k));
}

std::string format_pole_report(const std::string& model, const PoleReport& rep) {
  std::string s = "model: " + model + "\n";
  s += std::string("convention: ") + rep.convention + "\n";
  s += std::string("verdict: ") + verdict_name(rep.verdict) + "\n";
  s += "poles [1/tau_e], (re, im) x multiplicity:\n";
  char buf[96];
  for (const Pole& p : rep.poles) {
    std::snprintf(buf, sizeof(buf), "  (%.12g, %.12g) x %d\n", p.omega.real(),
                  p.omega.imag(), p.multiplicity);
    s += buf;
  }
  if (!rep.offending.empty()) {
    s += "offending (upper half-plane):\n";
    for (const auto& w : rep.offending) {
      std::snprintf(buf, sizeof(buf), "  (%.12g, %.12g)\n", w.real(), w.imag());
      s += buf;
    }
  }
  return s;
}

RunOutcome run_scenario(const Scenario& sc, const RunOptions& opt) {
  const std::filesystem::path out_dir = resolve_out_dir(opt);
  std::filesystem::create_directories(out_dir);

  std::uint64_t seed = sc.noise ? sc.noise->seed : 0;
  if (opt.seed_override) seed = *opt.seed_override;

  RunProducts products;
  if (sc.model.empty()) {
    // survey-only
  } else if (sc.fields) {
    products = run_relativistic(sc);
  } else if (sc.noise) {
    products = run_stochastic(sc, seed);
  } else {
    products = run_nonrel_deterministic(sc, seed);
  }

  json report;
  report["scenario"] = sc.name;
  report["scenario_hash"] = hex_hash(fnv1a(sc.canonical_json));
  report["model"] = sc.model.empty() ? "(survey)" : sc.model;
  report["seed"] = seed;
  report["status"] = status_name(products.status);
  if (products.efolding_time_s) {
    const double tau = tau_e(sc.particle, sc.constants);
    report["runaway"] = {{"efolding_time_s", *products.efolding_time_s},
                         {"efolding_over_tau_e", *products.efolding_time_s / tau}};
  }
  for (auto it = products.extras.begin(); it != products.extras.end(); ++it) {
    report[it.key()] = it.value();
  }

  bool noncausal = false;
  const std::set<std::string> nonrel = {"newton", "ald", "fo",
                                        "fo_sharp", "series", "oscillator"};
  if (nonrel.count(sc.model) > 0) {
    PoleReport rep;
    if (sc.model == "oscillator") {
      const double omega0 =
          std::sqrt(sc.spring_k / sc.particle.mass_renormalized);
      rep = poles_for_model("oscillator", sc.particle, sc.constants,
                            omega0 * tau_e(sc.particle, sc.constants));
    } else if (sc.model == "series") {
      rep = poles_for_model("series:" + std::to_string(sc.series_order),
                            sc.particle, sc.constants);
    } else {
      rep = poles_for_model(sc.model, sc.particle, sc.constants);
    }
    report["causality"] = pole_report_json(rep);
    noncausal |= rep.verdict == CausalityVerdict::NonCausal;
  }
  if (!sc.poles_survey.empty()) {
    json survey;
    for (const std::string& m : sc.poles_survey) {
      const PoleReport rep = poles_for_model(m, sc.particle, sc.constants);
      survey[m] = pole_report_json(rep);
      noncausal |= rep.verdict == CausalityVerdict::NonCausal;
    }
    report["poles_survey"] = survey;
  }

  RunOutcome outcome;
  if (products.trajectory) {
    outcome.trajectory_path = out_dir / sc.outputs.trajectory;
    std::filesystem::create_directories(outcome.trajectory_path.parent_path());
    write_csv(outcome.trajectory_path, *products.trajectory);
    for (const auto& [suffix, table] : products.extra_tables) {
      std::filesystem::path p = outcome.trajectory_path;
      p.replace_extension();
      p += suffix;
      p += ".csv";
      write_csv(p, table);
    }
  }

  outcome.status = status_name(products.status);
  switch (products.status) {
    case RunStatus::Completed:
      outcome.exit_code = kExitOk;
      break;
    case RunStatus::RunawayDetected:
      outcome.exit_code = kExitPhysics;
      break;
    default:
      outcome.exit_code = kExitError;
      break;
  }
  if (opt.strict_causal && noncausal && outcome.exit_code == kExitOk) {
    outcome.exit_code = kExitPhysics;
    outcome.status = "causality_violation";
  }
  report["exit_code"] = outcome.exit_code;

  outcome.report_path = out_dir / sc.outputs.report;
  std::filesystem::create_directories(outcome.report_path.parent_path());
  std::ofstream os(outcome.report_path);
  os << report.dump(2) << "\n";
  if (!os) throw std::runtime_error("run: cannot write report");
  return outcome;
}

namespace {

struct LoadedRun {
  std::vector<double> t;
  std::vector<std::vector<double>> pos;  // 1 or 3 coordinates
};

LoadedRun load_run_positions(const std::filesystem::path& path) {
  const CsvTable tab = read_csv(path);
  LoadedRun run;
  run.t = tab.column("t_s");
  if (std::find(tab.columns.begin(), tab.columns.end(), "y_cm") !=
      tab.columns.end()) {
    run.pos = {tab.column("x_cm"), tab.column("y_cm"), tab.column("z_cm")};
  } else if (std::find(tab.columns.begin(), tab.columns.end(), "mean_x_cm") !=
             tab.columns.end()) {
    run.pos = {tab.column("mean_x_cm")};
  } else {
    run.pos = {tab.column("x_cm")};
  }
  return run;
}

ComparisonReport::Entry position_deviation(const ComparePair& pair) {
  const LoadedRun a = load_run_positions(pair.run_a);
  const LoadedRun b = load_run_positions(pair.run_b);
  if (a.pos.size() != b.pos.size()) {
    throw std::runtime_error("compare: runs have different dimensionality");
  }
  const double lo = std::max(a.t.front(), b.t.front());
  const double hi = std::min(a.t.back(), b.t.back());
  if (!(hi > lo)) throw std::runtime_error("compare: runs do not overlap in time");

  std::vector<double> grid;
  for (double tv : a.t) {
    if (tv >= lo && tv <= hi) grid.push_back(tv);
  }
  if (grid.size() < 2) throw std::runtime_error("compare: too few overlapping samples");

  std::vector<std::vector<double>> b_interp;
  for (const auto& col : b.pos) {
    b_interp.push_back(cubic_resample(b.t, col, grid));
  }
  std::vector<std::vector<double>> a_keep(a.pos.size());
  {
    std::size_t gi = 0;
    for (std::size_t i = 0; i < a.t.size() && gi < grid.size(); ++i) {
      if (a.t[i] == grid[gi]) {
        for (std::size_t d = 0; d < a.pos.size(); ++d) {
          a_keep[d].push_back(a.pos[d][i]);
        }
        ++gi;
      }
    }
  }

  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double d2 = 0.0, s2 = 0.0;
    for (std::size_t d = 0; d < a.pos.size(); ++d) {
      const double diff = a_keep[d][i] - b_interp[d][i];
      d2 += diff * diff;
      const double disp = a_keep[d][i] - a_keep[d][0];
      s2 += disp * disp;
    }
    dev = std::max(dev, std::sqrt(d2));
    scale = std::max(scale, std::sqrt(s2));
  }
  ComparisonReport::Entry e;
  e.run_a = pair.run_a.string();
  e.run_b = pair.run_b.string();
  e.value = dev;
  e.normalized = scale > 0.0 ? dev / scale : dev;
  e.param = pair.param;
  return e;
}

ComparisonReport::Entry power_ratio(const ComparePair& pair) {
  const CsvTable tab = read_csv(pair.run_a);
  const auto t = tab.column("t_s");
  const auto pfo = tab.column("p_fo_erg_per_s");
  const auto pla = tab.column("p_larmor_erg_per_s");
  double e_fo = 0.0, e_la = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double h = t[i] - t[i - 1];
    e_fo += 0.5 * h * (pfo[i] + pfo[i - 1]);
    e_la += 0.5 * h * (pla[i] + pla[i - 1]);
  }
  ComparisonReport::Entry e;
  e.run_a = pair.run_a.string();
  e.run_b = pair.run_b.string();
  e.value = std::abs(e_fo - e_la);
  e.normalized = e_fo != 0.0 ? e.value / e_fo : e.value;
  e.param = pair.param;
  return e;
}

ComparisonReport::Entry pole_tables_diff(const ComparePair& pair) {
  auto load = [](const std::filesystem::path& p) {
    std::ifstream is(p);
    if (!is) throw std::runtime_error("compare: cannot open " + p.string());
    return json::parse(is);
  };
  const json a = load(pair.run_a);
  const json b = load(pair.run_b);

  auto tables = [](const json& j) {
    std::vector<std::pair<std::string, json>> out;
    if (j.contains("causality")) out.emplace_back("(model)", j.at("causality"));
    if (j.contains("poles_survey")) {
      for (auto it = j.at("poles_survey").begin(); it != j.at("poles_survey").end(); ++it) {
        out.emplace_back(it.key(), it.value());
      }
    }
    return out;
  };
  const auto ta = tables(a);
  const auto tb = tables(b);
  if (ta.size() != tb.size()) {
    throw std::runtime_error("compare: reports carry different pole tables");
  }
  double worst = 0.0;
  bool verdicts_match = true;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].first != tb[i].first) {
      throw std::runtime_error("compare: pole tables are for different models");
    }
    verdicts_match &= ta[i].second.at("verdict") == tb[i].second.at("verdict");
    const auto& pa = ta[i].second.at("poles");
    const auto& pb = tb[i].second.at("poles");
    for (const auto& p : pa) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : pb) {
        const double dr = p.at("re").get<double>() - q.at("re").get<double>();
        const double di = p.at("im").get<double>() - q.at("im").get<double>();
        best = std::min(best, std::hypot(dr, di));
      }
      worst = std::max(worst, best);
    }
  }
  ComparisonReport::Entry e;
  e.run_a = pair.run_a.string();
  e.run_b = pair.run_b.string();
  e.value = worst;
  e.normalized = verdicts_match ? worst : std::numeric_limits<double>::infinity();
  e.param = pair.param;
  return e;
}

} // namespace

CompareMetric compare_metric_from_name(const std::string& name) {
  if (name == "max_position_deviation") return CompareMetric::MaxPositionDeviation;
  if (name == "power_ratio_series") return CompareMetric::PowerRatioSeries;
  if (name == "pole_tables") return CompareMetric::PoleTables;
  throw ScenarioError("compare: unknown metric '" + name + "'");
}

ComparisonReport compare_runs(const std::vector<ComparePair>& pairs,
                              CompareMetric metric,
                              std::optional<double> tolerance) {
  if (pairs.empty()) throw std::invalid_argument("compare: no run pairs");
  ComparisonReport rep;
  rep.tolerance = tolerance;
  switch (metric) {
    case CompareMetric::MaxPositionDeviation:
      rep.metric = "max_position_deviation";
      for (const auto& p : pairs) rep.entries.push_back(position_deviation(p));
      break;
    case CompareMetric::PowerRatioSeries:
      rep.metric = "power_ratio_series";
      for (const auto& p : pairs) rep.entries.push_back(power_ratio(p));
      break;
    case CompareMetric::PoleTables:
      rep.metric = "pole_tables";
      for (const auto& p : pairs) rep.entries.push_back(pole_tables_diff(p));
      break;
  }

  std::vector<double> params, values;
  for (const auto& e : rep.entries) {
    if (e.param && e.normalized > 0.0) {
      params.push_back(*e.param);
      values.push_back(e.normalized);
    }
  }
  if (params.size() >= 2) {
    rep.fitted_exponent = fit_loglog_slope(params, values);
  }
  if (tolerance) {
    for (const auto& e : rep.entries) rep.pass &= e.normalized <= *tolerance;
  }
  return rep;
}

void write_comparison_report(const std::filesystem::path& path,
                             const ComparisonReport& rep) {
  json j;
  j["metric"] = rep.metric;
  j["pass"] = rep.pass;
  if (rep.tolerance) j["tolerance"] = *rep.tolerance;
  if (rep.fitted_exponent) j["fitted_exponent"] = *rep.fitted_exponent;
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json ej;
    ej["run_a"] = e.run_a;
    ej["run_b"] = e.run_b;
    ej["value"] = e.value;
    ej["normalized"] = e.normalized;
    if (e.param) ej["param"] = *e.param;
    entries.push_back(ej);
  }
  j["pairs"] = entries;
  std::ofstream os(path);
  os << j.dump(2) << "\n";
  if (!os) throw std::runtime_error("compare: cannot write report");
}

} // namespace radreact
