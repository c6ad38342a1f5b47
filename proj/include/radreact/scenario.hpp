#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radreact/constants.hpp"
#include "radreact/ensemble.hpp"
#include "radreact/force.hpp"
#include "radreact/fourvec.hpp"
#include "radreact/noise.hpp"
#include "radreact/particle.hpp"

namespace radreact {

//! Malformed scenario / validation failure ("software said no", exit 1).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Declarative description of one run, parsed from a versioned JSON file.
//! All physical quantities carry explicit unit suffixes in their key names.
struct Scenario {
  int version = 1;
  std::string name;
  //! newton | ald | fo | fo_sharp | series | oscillator |
  //! rel_fo_covariant | rel_fo_3vector | ll_type | (empty: survey-only)
  std::string model;
  int series_order = 0;
  double spring_k = 0.0;  //!< [dyn/cm], oscillator

  Constants constants;
  ParticleParams particle;

  std::optional<ForceModel> force;  //!< nonrelativistic models
  struct Fields {
    Vec3 E;  //!< [statV/cm]
    Vec3 B;  //!< [G]
  };
  std::optional<Fields> fields;     //!< relativistic models

  std::optional<NoiseSpec> noise;   //!< fo / oscillator only
  std::optional<EnsembleConfig> ensemble;
  bool keep_members = false;

  struct Integrator {
    double tol = 1e-10;
    std::optional<double> dt_s;          //!< stochastic grid spacing
    std::optional<std::array<double, 2>> t_span_s;
    std::optional<std::array<double, 2>> tau_span_s;
    std::optional<double> sample_dt_s;
    double burn_in_s = 0.0;
    std::size_t record_stride = 1;
    bool bounded_analytic = false;       //!< ald: closed-form runaway-free branch
    bool radiation_reaction = true;      //!< relativistic models
  } integrator;

  struct Initial {
    double x_cm = 0.0;
    double v_cm_per_s = 0.0;
    std::optional<double> a_cm_per_s2;   //!< ald only
    bool steady_state = false;           //!< start on the periodic solution
    Vec3 position_cm;
    Vec3 v_over_c;
  } initial;

  //! Model names whose pole tables go into the report; a scenario with a
  //! survey and no force/fields block is report-only.
  std::vector<std::string> poles_survey;

  struct Outputs {
    std::string trajectory;  //!< CSV path, relative to the out dir
    std::string report;      //!< JSON path, relative to the out dir
  } outputs;

  std::string canonical_json;  //!< normalized dump used for the scenario hash
};

Scenario parse_scenario_file(const std::filesystem::path& path);
Scenario parse_scenario_text(const std::string& json_text);

} // namespace radreact
