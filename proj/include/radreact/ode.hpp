#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace radreact::ode {

//! Right-hand side of y' = f(t, y); writes the derivative into dydt.
using Rhs = std::function<void(double t, std::span<const double> y,
                               std::span<double> dydt)>;

//! Called after every accepted step; return false to abort the run.
using Guard = std::function<bool(double t, std::span<const double> y)>;

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  //! Per-component problem scales. The error weight of component i is
  //! abs_tol + rel_tol * max(y_scale[i], |y_i|), so components that are
  //! tiny in the solver's internal units stay under relative control.
  std::vector<double> y_scale;
  //! When set, classic fixed-step RK4 instead of the embedded pair.
  std::optional<double> fixed_step;
  //! Forced step boundaries (force discontinuities etc).
  std::vector<double> breakpoints;
  //! When set, step ends are forced onto the uniform grid t0 + k*sample_dt
  //! and only those points are recorded.
  std::optional<double> sample_dt;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
  Guard guard;
};

enum class Status { Completed, GuardStop, StepUnderflow, MaxStepsExceeded };

struct Sample {
  double t;
  std::vector<double> y;
};

struct Result {
  Status status = Status::Completed;
  std::vector<Sample> samples;  //!< sample grid when sample_dt set, else accepted steps
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;
  double t_final = 0.0;
  std::vector<double> y_final;
};

//! Adaptive embedded Dormand-Prince 4(5) with PI step-size control.
//! Integrates forward only (t1 > t0 required).
Result integrate(const Rhs& rhs, double t0, double t1,
                 std::span<const double> y0, const Options& opt);

} // namespace radreact::ode
