#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace radreact {

//! One force evaluation: value and its first two time derivatives.
struct ForceSample {
  double f = 0.0;      //!< [dyn]
  double fdot = 0.0;   //!< [dyn/s]
  double fddot = 0.0;  //!< [dyn/s^2]
};

//! External driving force f(t) with analytic first and second derivatives.
//!
//! The step force's derivative is distributional; eval() reports fdot = 0
//! away from the switch-on time and the integrators treat t_on as a
//! breakpoint (stop/restart the step).
class ForceModel {
 public:
  struct Zero {};
  struct Constant {
    double f0;
  };
  struct Step {
    double f0;
    double t_on;
  };
  struct SinDrive {
    double f0;
    double omega;
    double phase;
  };
  struct GaussianPulse {
    double f0;
    double t0;
    double sigma;
  };
  //! Uniformly spaced samples; derivatives from centered finite differences.
  struct Tabulated {
    double t0;
    double dt;
    std::vector<double> values;
  };

  using Variant =
      std::variant<Zero, Constant, Step, SinDrive, GaussianPulse, Tabulated>;

  static ForceModel zero();
  static ForceModel constant(double f0);
  static ForceModel step(double f0, double t_on);
  static ForceModel sin_drive(double f0, double omega, double phase = 0.0);
  static ForceModel gaussian_pulse(double f0, double t0, double sigma);
  static ForceModel tabulated(double t0, double dt, std::vector<double> values);

  //! Evaluate (f, fdot, fddot) at time t [s]. Tabulated queries outside the
  //! table domain throw std::out_of_range.
  ForceSample eval(double t) const;

  //! Times where the integrator must stop/restart a step.
  std::vector<double> breakpoints() const;

  //! Valid query interval (Tabulated only).
  std::optional<std::pair<double, double>> domain() const;

  //! True when f(t) is discontinuous somewhere (Step).
  bool has_discontinuity() const;

  const Variant& variant() const { return v_; }

 private:
  explicit ForceModel(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

} // namespace radreact
