#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "radreact/constants.hpp"
#include "radreact/force.hpp"
#include "radreact/particle.hpp"

namespace radreact {

//! One-dimensional kinematic state. The acceleration slot is carried as a
//! state variable only for the ALD extended system.
struct StateNR {
  double t = 0.0;          //!< [s]
  double x = 0.0;          //!< [cm]
  double v = 0.0;          //!< [cm/s]
  std::optional<double> a; //!< [cm/s^2], ALD only
};

//! Deterministic nonrelativistic equation-of-motion family.
//!
//! Newton:     M x'' = f(t)
//! ALD:        M x'' - M tau_e x''' = f(t)        (point electron)
//! FO:         M x'' = f(t) + tau_e f'(t)         (structured electron)
//! FOSharp:    M x'' = (1 + (tau_e/2) d/dt)^2 f   (sharper cutoff)
//! Series(N):  M x'' + M sum_{n=3..N} (-1)^n tau_e^{n-2} x^(n) = f(t)
//! Oscillator: M x'' + zeta x' + K x = f(t), zeta = K tau_e
struct ModelNR {
  struct Newton {};
  struct ALD {};
  struct FO {};
  struct FOSharp {};
  struct Series {
    int order;  //!< truncation N, 3 <= N <= 30
  };
  struct Oscillator {
    double spring_k;  //!< K [dyn/cm], > 0
  };
  using Variant = std::variant<Newton, ALD, FO, FOSharp, Series, Oscillator>;

  Variant variant;
  ParticleParams particle;

  static ModelNR newton(ParticleParams p);
  static ModelNR ald(ParticleParams p);
  static ModelNR fo(ParticleParams p);
  static ModelNR fo_sharp(ParticleParams p);
  static ModelNR series(ParticleParams p, int order);
  static ModelNR oscillator(ParticleParams p, double spring_k);

  const char* name() const;
};

inline constexpr int kSeriesMinOrder = 3;
inline constexpr int kSeriesMaxOrder = 30;

//! FO acceleration (f + tau_e f')/M at time t [cm/s^2].
double fo_accel(const ParticleParams& p, const Constants& k,
                const ForceModel& force, double t);

//! Sharper-cutoff acceleration (f + tau_e f' + (tau_e^2/4) f'')/M.
double fo_sharp_accel(const ParticleParams& p, const Constants& k,
                      const ForceModel& force, double t);

//! First-order ALD system: returns (x', v', a') = (v, a, (a - f/M)/tau_e).
std::array<double, 3> ald_extended_rhs(const ParticleParams& p,
                                       const Constants& k,
                                       const ForceModel& force,
                                       const StateNR& state);

//! Runaway-free ALD response to a step force F0 switching on at t = 0:
//! a(t) = (F0/M) e^{t/tau_e} for t < 0 (preacceleration), F0/M for t >= 0.
double ald_preacceleration(const ParticleParams& p, const Constants& k,
                           double f0, double t);

//! Truncated-series extended system. State y = (x, x', ..., x^(N-1));
//! writes (x', ..., x^(N)) with the top derivative solved from the
//! truncation at n = N. Works in the internal units of `Scales`
//! (tau_e = M = 1); used by integrate() and exposed for testing.
void series_rhs_internal(int order, double f_internal,
                         std::span<const double> y, std::span<double> dydt);

//! Damped-oscillator right-hand side: returns (x', v') with
//! v' = (f_drive(t) - zeta v - K x)/M and zeta = K tau_e.
std::array<double, 2> oscillator_rhs(const ParticleParams& p,
                                     const Constants& k, double spring_k,
                                     const ForceModel& drive, double t,
                                     double x, double v);

//! Radiated power along an FO trajectory, P = (tau_e/M) f(t)^2 [erg/s].
double radiated_power_fo(const ParticleParams& p, const Constants& k,
                         const ForceModel& force, double t);

//! Larmor rate (2e^2/3c^3) a^2 = tau_e M a^2 for a given acceleration.
double radiated_power_larmor(const ParticleParams& p, const Constants& k,
                             double accel);

struct ReducedModel {
  ModelNR model;
  const char* note;
};

//! Order reduction of the ALD equation: substituting M x''' = f' (valid to
//! order tau_e) yields the FO form. The substitution changes the physical
//! content from a point charge to a charge with structure; the returned
//! note records that. Idempotent on already-reduced models.
ReducedModel reduce_order(const ModelNR& model);

//! Characteristic function of the truncated series in the frequency domain
//! (convention e^{-i w t}, w in units of 1/tau_e, mass scaled out):
//! D_N(w) = -w^2 + sum_{n=3..N} (i w)^n, evaluated by direct partial
//! summation.
std::complex<double> series_char_partial(int order, std::complex<double> wtau);

//! Closed form the partial sums converge to for |w tau_e| < 1:
//! D(w) = -w^2 / (1 - i w).
std::complex<double> fo_char_closed(std::complex<double> wtau);

//! One output record of a nonrelativistic run, physical units.
struct TrajectoryPoint {
  double t;         //!< [s]
  double x;         //!< [cm]
  double v;         //!< [cm/s]
  double a;         //!< [cm/s^2]
  double f;         //!< [dyn]
  double p_fo;      //!< (tau_e/M) f^2 [erg/s]
  double p_larmor;  //!< tau_e M a^2 [erg/s]
};

enum class RunStatus { Completed, RunawayDetected, StepUnderflow, Aborted };

struct Trajectory {
  RunStatus status = RunStatus::Completed;
  std::vector<TrajectoryPoint> points;
  //! Runaway diagnostic: fitted e-folding time of |a| [s].
  std::optional<double> efolding_time_s;
  std::size_t n_accepted = 0;
  std::size_t n_rejected = 0;
};

struct IntegrateOptions {
  double tol = 1e-10;                     //!< relative tolerance
  std::optional<double> fixed_step_s;     //!< classic RK4 when set
  std::optional<double> sample_dt_s;      //!< uniform output grid
  double runaway_amplification = 1e6;     //!< guard threshold on |a| growth
};

//! Integrate a model with the adaptive embedded RK4(5) pair over
//! [t0, t1]. Force breakpoints are honored as step boundaries. For the ALD
//! and series systems a runaway guard aborts the run (with an e-folding
//! estimate) once |a| grows by more than `runaway_amplification` over the
//! span. Series runs start with x^(n) = 0 for n >= 2.
Trajectory integrate(const ModelNR& model, const Constants& k,
                     const ForceModel& force, const StateNR& initial,
                     double t0, double t1, const IntegrateOptions& opt);

//! Bounded (runaway-free) ALD solution in closed form. Supported forces:
//! Zero, Constant, SinDrive (periodic particular solution) and Step at
//! t_on = 0 (preacceleration branch, at rest in the far past). Forward
//! integration of the extended system is exponentially unstable, so the
//! bounded branch is always produced analytically.
StateNR ald_bounded_state(const ParticleParams& p, const Constants& k,
                          const ForceModel& force, double t);

//! Periodic particular solution of the FO equation under SinDrive
//! (also accepts Zero/Constant, where the particular solution is the
//! polynomial response from rest at t = 0).
StateNR fo_periodic_state(const ParticleParams& p, const Constants& k,
                          const ForceModel& force, double t);

//! Uniformly sampled trajectory of the bounded ALD branch.
Trajectory ald_bounded_trajectory(const ParticleParams& p, const Constants& k,
                                  const ForceModel& force, double t0,
                                  double t1, double dt);

} // namespace radreact
