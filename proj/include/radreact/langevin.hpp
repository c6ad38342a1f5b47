#pragma once

#include <cstddef>
#include <optional>

#include "radreact/constants.hpp"
#include "radreact/eom_nonrel.hpp"
#include "radreact/force.hpp"
#include "radreact/noise.hpp"
#include "radreact/particle.hpp"

namespace radreact {

struct StochasticOptions {
  //! Record every k-th step in the output trajectory (0 records only the
  //! first and last point; long equilibrium runs keep the stride large).
  std::size_t record_stride = 1;
  //! Stationary moments are accumulated for t >= burn_in_s only.
  double burn_in_s = 0.0;
};

struct StochasticRun {
  Trajectory trajectory;
  //! Time averages of x^2 and v^2 over the post-burn-in window [cm^2, (cm/s)^2].
  double mean_x2 = 0.0;
  double mean_v2 = 0.0;
  std::size_t n_stat = 0;
};

//! Noise-driven damped oscillator M x'' + zeta x' + K x = F(t), integrated
//! with the stochastic Heun scheme on a fixed grid. The Ohmic coupling
//! zeta = K tau_e is enforced against the noise spec (1e-9 relative), and
//! dt above the stability bound dt * omega_0 > 0.1 is rejected. The run is
//! reproducible from the noise seed.
StochasticRun langevin_oscillator(const ParticleParams& p, const Constants& k,
                                  double spring_k, const NoiseSpec& spec,
                                  const StateNR& initial, double t0, double t1,
                                  double dt, const StochasticOptions& opt = {});

//! Fluctuation-driven free particle M x'' = F(t) + tau_e F'(t) (+ external
//! FO force when given): Euler-Maruyama under white noise, where the
//! tau_e F' term has no pathwise meaning and is dropped; stochastic Heun
//! with a centered-difference F' under the correlated process.
StochasticRun free_fluctuating(const ParticleParams& p, const Constants& k,
                               const NoiseSpec& spec, const StateNR& initial,
                               double t0, double t1, double dt,
                               const ForceModel& external = ForceModel::zero(),
                               const StochasticOptions& opt = {});

} // namespace radreact
