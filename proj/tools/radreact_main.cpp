// radreact - scenario-driven runs, comparisons, and pole tables for the
// radiating-electron equation-of-motion family.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radreact/runner.hpp"
#include "radreact/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"radiating-electron equations of motion: run, compare, poles"};
  app.require_subcommand(1);

  // run
  std::string scenario_path;
  std::string out_dir;
  bool strict_causal = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out-dir", out_dir, "output directory (default: $RADREACT_OUT_DIR or cwd)");
  run->add_flag("--strict-causal", strict_causal,
                "exit 2 when the scenario's model is non-causal");
  run->add_option("--seed", seed, "override the noise seed")
      ->each([&](const std::string&) { seed_given = true; });

  // compare
  std::vector<std::string> compare_runs_paths;
  std::string metric_name = "max_position_deviation";
  std::vector<std::string> extra_pairs;
  std::vector<double> params;
  std::string compare_out = "comparison.json";
  double tolerance = -1.0;
  auto* cmp = app.add_subcommand("compare", "compare two runs by a metric");
  cmp->add_option("runs", compare_runs_paths, "run_a run_b (trajectory CSVs, or report JSONs for pole_tables)")
      ->expected(2);
  cmp->add_option("--metric", metric_name,
                  "max_position_deviation | power_ratio_series | pole_tables");
  cmp->add_option("--pair", extra_pairs,
                  "additional sweep pair 'a.csv:b.csv' (repeatable)");
  cmp->add_option("--params", params,
                  "sweep abscissae (one per pair, in order) for the exponent fit");
  cmp->add_option("--tolerance", tolerance, "pass/fail threshold on the normalized value");
  cmp->add_option("--out", compare_out, "comparison report path");

  // poles
  std::string pole_model;
  double omega0_tau = 1e-7;
  std::string poles_out;
  auto* poles = app.add_subcommand("poles", "pole table and causality verdict for a model");
  poles->add_option("model", pole_model,
                    "newton | ald | fo | fo_sharp | series:N | oscillator")
      ->required();
  poles->add_option("--omega0-tau", omega0_tau,
                    "oscillator frequency as omega_0 tau_e (default 1e-7)");
  poles->add_option("--out", poles_out, "also write the table as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const radreact::Scenario sc = radreact::parse_scenario_file(scenario_path);
      radreact::RunOptions opt;
      opt.out_dir = out_dir;
      opt.strict_causal = strict_causal;
      if (seed_given) opt.seed_override = seed;
      const radreact::RunOutcome outcome = radreact::run_scenario(sc, opt);
      std::cout << "status: " << outcome.status << "\n";
      if (!outcome.trajectory_path.empty()) {
        std::cout << "trajectory: " << outcome.trajectory_path.string() << "\n";
      }
      std::cout << "report: " << outcome.report_path.string() << "\n";
      return outcome.exit_code;
    }

    if (*cmp) {
      std::vector<radreact::ComparePair> pairs;
      pairs.push_back({compare_runs_paths[0], compare_runs_paths[1], {}});
      for (const std::string& pq : extra_pairs) {
        const auto colon = pq.find(':');
        if (colon == std::string::npos) {
          std::cerr << "error: --pair expects 'a:b'\n";
          return radreact::kExitError;
        }
        pairs.push_back({pq.substr(0, colon), pq.substr(colon + 1), {}});
      }
      if (!params.empty()) {
        if (params.size() != pairs.size()) {
          std::cerr << "error: --params must list one value per pair\n";
          return radreact::kExitError;
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].param = params[i];
      }
      const auto metric = radreact::compare_metric_from_name(metric_name);
      std::optional<double> tol;
      if (tolerance >= 0.0) tol = tolerance;
      const radreact::ComparisonReport rep =
          radreact::compare_runs(pairs, metric, tol);
      radreact::write_comparison_report(compare_out, rep);
      for (const auto& e : rep.entries) {
        std::cout << e.run_a << " vs " << e.run_b << ": value=" << e.value
                  << " normalized=" << e.normalized << "\n";
      }
      if (rep.fitted_exponent) {
        std::cout << "fitted exponent: " << *rep.fitted_exponent << "\n";
      }
      std::cout << (rep.pass ? "PASS" : "FAIL") << " (report: " << compare_out
                << ")\n";
      return rep.pass ? radreact::kExitOk : radreact::kExitPhysics;
    }

    if (*poles) {
      const radreact::Constants consts = radreact::Constants::gaussian_cgs();
      const radreact::ParticleParams electron =
          radreact::ParticleParams::electron(consts);
      const radreact::PoleReport rep =
          radreact::poles_for_model(pole_model, electron, consts, omega0_tau);
      std::cout << radreact::format_pole_report(pole_model, rep);
      if (!poles_out.empty()) {
        std::ofstream os(poles_out);
        os << radreact::format_pole_report(pole_model, rep);
        if (!os) {
          std::cerr << "error: cannot write " << poles_out << "\n";
          return radreact::kExitError;
        }
      }
      return radreact::kExitOk;
    }
  } catch (const radreact::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return radreact::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return radreact::kExitError;
  }
  return radreact::kExitError;
}
