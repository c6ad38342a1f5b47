#include "radreact/particle.hpp"

#include <cmath>
#include <stdexcept>

namespace radreact {

double tau_e(const ParticleParams& p, const Constants& k) {
  if (!(p.mass_renormalized > 0.0)) {
    throw std::domain_error("tau_e: renormalized mass must be positive");
  }
  const double c3 = k.c * k.c * k.c;
  return (2.0 / 3.0) * p.charge * p.charge / (p.mass_renormalized * c3);
}

double cutoff_limit(const ParticleParams& p, const Constants& k) {
  return 1.0 / tau_e(p, k);
}

RenormResult renormalize(double mass_observed, double cutoff_omega,
                         double charge, const Constants& k) {
  if (!(mass_observed > 0.0)) {
    throw std::domain_error("renormalize: observed mass must be positive");
  }
  if (cutoff_omega < 0.0) {
    throw std::domain_error("renormalize: cutoff frequency must be non-negative");
  }
  ParticleParams probe;
  probe.charge = charge;
  probe.mass_renormalized = mass_observed;
  const double omega_max = cutoff_limit(probe, k);

  RenormResult r;
  r.bare_mass = mass_observed * (1.0 - cutoff_omega / omega_max);
  if (cutoff_omega > omega_max && r.bare_mass < 0.0) {
    r.verdict = CausalityVerdict::NonCausal;
    r.message = "negative bare mass - causality violated";
  } else if (r.bare_mass == 0.0) {
    r.verdict = CausalityVerdict::Marginal;
    r.message = "zero bare mass - smallest structure consistent with causality";
  } else {
    r.verdict = CausalityVerdict::Causal;
    r.message = "bare mass positive";
  }
  return r;
}

ParticleParams ParticleParams::electron(const Constants& k) {
  ParticleParams p;
  p.charge = -k.e_charge;
  p.mass_renormalized = k.m_electron;
  p.bare_mass = 0.0;
  return p;
}

ParticleParams ParticleParams::make(double charge, double mass_renormalized,
                                    std::optional<double> cutoff_omega,
                                    const Constants& k) {
  if (!(mass_renormalized > 0.0)) {
    throw std::domain_error("ParticleParams: renormalized mass must be positive");
  }
  ParticleParams p;
  p.charge = charge;
  p.mass_renormalized = mass_renormalized;
  p.cutoff_omega = cutoff_omega;
  if (cutoff_omega) {
    const RenormResult r = renormalize(mass_renormalized, *cutoff_omega, charge, k);
    if (r.verdict == CausalityVerdict::NonCausal) {
      throw std::domain_error("ParticleParams: negative bare mass - causality violated");
    }
    p.bare_mass = r.bare_mass;
  }
  return p;
}

} // namespace radreact
