#pragma once

#include <optional>

#include "radreact/constants.hpp"

namespace radreact {

enum class CausalityVerdict { Causal, NonCausal, Marginal };

//! The physical identity of the electron model.
//!
//! `cutoff_omega` absent means "point-electron limit requested"; it is kept
//! as an explicit absence (not Omega = inf) so the causality analysis can
//! report the pathology instead of overflowing.
struct ParticleParams {
  double charge = 0.0;                 //!< [statC]
  double mass_renormalized = 0.0;      //!< observed mass M [g]
  std::optional<double> cutoff_omega;  //!< Omega [1/s]
  double bare_mass = 0.0;              //!< m [g], derived; 0 when no cutoff given

  //! Electron with charge -e and the observed electron mass, no cutoff.
  static ParticleParams electron(const Constants& k);

  //! Validating constructor. Enforces M > 0 and, when a cutoff is given,
  //! m = M(1 - tau_e*Omega) >= 0 (throws std::domain_error otherwise).
  static ParticleParams make(double charge, double mass_renormalized,
                             std::optional<double> cutoff_omega,
                             const Constants& k);
};

//! Characteristic radiation time tau_e = (2/3) e^2 / (M c^3) [s].
//! For electron constants this is about 6.27e-24 s.
double tau_e(const ParticleParams& p, const Constants& k);

//! Largest cutoff frequency consistent with a non-negative bare mass,
//! Omega_max = 1/tau_e [1/s].
double cutoff_limit(const ParticleParams& p, const Constants& k);

struct RenormResult {
  double bare_mass = 0.0;  //!< m [g]; negative exactly when verdict is NonCausal
  CausalityVerdict verdict = CausalityVerdict::Causal;
  const char* message = "";
};

//! Bare mass from the observed mass and cutoff, m = M(1 - tau_e*Omega).
//!
//! A cutoff beyond 1/tau_e is a physics verdict (negative bare mass,
//! causality violated), reported in the result rather than thrown.
//! The bare mass is computed as M*(1 - Omega/Omega_max) so the m = 0
//! boundary at Omega = Omega_max is exact in floating point.
RenormResult renormalize(double mass_observed, double cutoff_omega,
                         double charge, const Constants& k);

} // namespace radreact
