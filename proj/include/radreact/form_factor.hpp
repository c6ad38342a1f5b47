#pragma once

#include <stdexcept>

namespace radreact {

//! Squared form factor f_k^2 of the electron charge distribution as a
//! function of real frequency. Both variants equal 1 at omega = 0 and
//! satisfy 0 < f_k^2 <= 1 on the real axis.
struct FormFactor {
  enum class Kind {
    Feynman,  //!< Omega^2 / (Omega^2 + w^2)
    Sharp     //!< Omega^4 / (w^2 + Omega^2)^2, faster decay beyond Omega
  };

  Kind kind = Kind::Feynman;
  double cutoff_omega = 0.0;  //!< Omega [1/s]

  static FormFactor feynman(double cutoff_omega) {
    check(cutoff_omega);
    return {Kind::Feynman, cutoff_omega};
  }
  static FormFactor sharp(double cutoff_omega) {
    check(cutoff_omega);
    return {Kind::Sharp, cutoff_omega};
  }

  double operator()(double omega) const {
    const double o2 = cutoff_omega * cutoff_omega;
    const double w2 = omega * omega;
    const double lorentz = o2 / (o2 + w2);
    return kind == Kind::Feynman ? lorentz : lorentz * lorentz;
  }

 private:
  static void check(double cutoff_omega) {
    if (!(cutoff_omega > 0.0)) {
      throw std::invalid_argument("FormFactor: cutoff must be positive");
    }
  }
};

} // namespace radreact
