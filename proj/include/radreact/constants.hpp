#pragma once

namespace radreact {

//! Fundamental constants, Gaussian CGS units.
//!
//! Frozen at CODATA magnitudes. A scenario file may override them through an
//! explicit block; nothing else in the library mutates a Constants value
//! after construction.
struct Constants {
  double c;          //!< speed of light [cm/s]
  double hbar;       //!< reduced Planck constant [erg s]
  double kB;         //!< Boltzmann constant [erg/K]
  double e_charge;   //!< elementary charge [statC]
  double m_electron; //!< electron mass [g]

  //! Standard Gaussian CGS values.
  static Constants gaussian_cgs();

  //! Throws std::domain_error unless every entry is strictly positive.
  void validate() const;
};

} // namespace radreact
