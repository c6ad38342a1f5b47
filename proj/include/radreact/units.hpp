#pragma once

#include "radreact/constants.hpp"
#include "radreact/particle.hpp"

namespace radreact {

//! Internal nondimensionalization shared by every integrator.
//!
//! Time is measured in tau_e, mass in the renormalized mass M, length in
//! c*tau_e. Raw Gaussian CGS magnitudes (tau_e ~ 6e-24 s) are numerically
//! hostile for step-size control; inside the solvers tau_e = M = c = 1.
//! All public I/O stays in physical units.
struct Scales {
  double time_s = 1.0;     //!< one internal time unit [s]
  double mass_g = 1.0;     //!< one internal mass unit [g]
  double length_cm = 1.0;  //!< one internal length unit [cm]

  static Scales internal(const ParticleParams& p, const Constants& k) {
    Scales s;
    s.time_s = tau_e(p, k);
    s.mass_g = p.mass_renormalized;
    s.length_cm = k.c * s.time_s;
    return s;
  }

  double velocity() const { return length_cm / time_s; }           // [cm/s]
  double accel() const { return length_cm / (time_s * time_s); }   // [cm/s^2]
  double force() const { return mass_g * accel(); }                // [dyn]
  double force_rate() const { return force() / time_s; }           // [dyn/s]
  double energy() const { return force() * length_cm; }            // [erg]
  double power() const { return energy() / time_s; }               // [erg/s]
  double spring() const { return force() / length_cm; }            // [dyn/cm]
  double damping() const { return mass_g / time_s; }               // [g/s]
  double frequency() const { return 1.0 / time_s; }                // [1/s]
};

inline double to_internal(double physical, double unit) { return physical / unit; }
inline double to_physical(double internal, double unit) { return internal * unit; }

} // namespace radreact
