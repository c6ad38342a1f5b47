#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radreact/causality.hpp"
#include "radreact/scenario.hpp"

namespace radreact {

//! Exit-code contract: 0 success, 1 software error, 2 physics verdict
//! (runaway detected; causality violation under strict mode).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPhysics = 2;

struct RunOptions {
  std::filesystem::path out_dir;  //!< empty: $RADREACT_OUT_DIR or cwd
  bool strict_causal = false;
  std::optional<std::uint64_t> seed_override;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::filesystem::path trajectory_path;
  std::filesystem::path report_path;
  std::string status;  //!< completed | runaway_detected | ...
};

//! Execute a parsed scenario: integrate, serialize the trajectory CSV and
//! the report JSON, and map physics verdicts onto the exit code.
RunOutcome run_scenario(const Scenario& sc, const RunOptions& opt);

enum class CompareMetric { MaxPositionDeviation, PowerRatioSeries, PoleTables };

CompareMetric compare_metric_from_name(const std::string& name);

struct ComparePair {
  std::filesystem::path run_a;
  std::filesystem::path run_b;
  std::optional<double> param;  //!< sweep abscissa (e.g. omega tau_e)
};

struct ComparisonReport {
  std::string metric;
  struct Entry {
    std::string run_a;
    std::string run_b;
    double value = 0.0;       //!< deviation in physical units
    double normalized = 0.0;  //!< deviation over the run's own scale
    std::optional<double> param;
  };
  std::vector<Entry> entries;
  //! Scaling exponent of normalized deviation vs param (>= 2 parametrized
  //! pairs required).
  std::optional<double> fitted_exponent;
  std::optional<double> tolerance;
  bool pass = true;
};

//! Compare runs by a metric; grids are aligned by cubic resampling onto the
//! first run's time column. With a tolerance, pass means every normalized
//! value stays within it.
ComparisonReport compare_runs(const std::vector<ComparePair>& pairs,
                              CompareMetric metric,
                              std::optional<double> tolerance = {});

void write_comparison_report(const std::filesystem::path& path,
                             const ComparisonReport& rep);

//! Pole table for a named model (newton | ald | fo | fo_sharp | series:N |
//! oscillator). The oscillator takes omega_0 tau_e through `omega0_tau`.
PoleReport poles_for_model(const std::string& name, const ParticleParams& p,
                           const Constants& k, double omega0_tau = 1e-7);

//! Render a pole report as text: one "(re, im)" pair per line in 1/tau_e
//! units, 12 significant digits, plus the verdict and sign convention.
std::string format_pole_report(const std::string& model, const PoleReport& rep);

} // namespace radreact
