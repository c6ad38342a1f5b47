#pragma once

#include <complex>
#include <vector>

#include "radreact/constants.hpp"
#include "radreact/eom_nonrel.hpp"
#include "radreact/particle.hpp"
#include "radreact/polynomial.hpp"

namespace radreact {

//! Generalized susceptibility alpha(w) of an equation of motion, as a
//! rational function of w = omega * tau_e.
//!
//! Sign convention: time dependence e^{-i w t}, so d/dt -> -i w. Under this
//! convention a causal response has all poles in the lower half-plane; the
//! convention is stated in every report because the half-planes flip with it.
struct RationalTransfer {
  ComplexPoly numerator;
  ComplexPoly denominator;
  static constexpr const char* kConvention = "e^{-i w t}";

  //! Throws std::invalid_argument when numerator and denominator share a
  //! root within the matching tolerance (1e-9 in w units).
  RationalTransfer(ComplexPoly num, ComplexPoly den);

  std::complex<double> eval(std::complex<double> w) const;
};

struct Pole {
  std::complex<double> omega;  //!< [1/tau_e]
  int multiplicity = 1;
};

struct PoleReport {
  std::vector<Pole> poles;
  CausalityVerdict verdict = CausalityVerdict::Causal;
  //! Poles strictly above the real axis (causality violations).
  std::vector<std::complex<double>> offending;
  //! max |den(pole)| / max|coefficient| over all located poles.
  double max_residual = 0.0;
  const char* convention = RationalTransfer::kConvention;
};

//! Characteristic transfer function of a nonrelativistic model:
//!   Newton      1 / (-M w^2)
//!   ALD         1 / (-M w^2 (1 + i w))
//!   FO          (1 - i w) / (-M w^2)
//!   FOSharp     (1 - i w / 2)^2 / (-M w^2)
//!   Series(N)   1 / (partial sum of the truncated characteristic function)
//!   Oscillator  1 / (K - M w^2 - i w K)
//! with w in 1/tau_e units and M = 1, K = (omega_0 tau_e)^2 internally.
RationalTransfer susceptibility_of(const ModelNR& model, const Constants& k);

//! Locate all denominator roots (companion-matrix eigenvalues), cluster
//! multiplicities at the 1e-9 matching tolerance, and classify:
//! NonCausal iff any pole lies strictly above the real axis, Marginal iff
//! poles sit on the axis (within a relative tolerance of 1e-9 |w|) with
//! none above, Causal otherwise.
PoleReport find_poles(const RationalTransfer& rt);

struct OhmicRealPartReport {
  double re_mu_tilde = 0.0;  //!< zeta = K tau_e [g/s], constant over omega
  CausalityVerdict verdict = CausalityVerdict::Causal;
};

//! The oscillator is the one case where the Ohmic reduction makes the
//! memory-function transform explicit: mu~(w) = zeta = K tau_e, constant and
//! positive for K > 0 (Marginal when K = 0).
OhmicRealPartReport verify_positive_real_part(double spring_k,
                                              const ParticleParams& p,
                                              const Constants& k);

} // namespace radreact
