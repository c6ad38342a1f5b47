#include "radreact/constants.hpp"

#include <stdexcept>

namespace radreact {

Constants Constants::gaussian_cgs() {
  Constants k;
  k.c = 2.99792458e10;
  k.hbar = 1.054571817e-27;
  k.kB = 1.380649e-16;
  k.e_charge = 4.80320471e-10;
  k.m_electron = 9.1093837015e-28;
  return k;
}

void Constants::validate() const {
  const double vals[] = {c, hbar, kB, e_charge, m_electron};
  for (double v : vals) {
    if (!(v > 0.0)) {
      throw std::domain_error("Constants: all entries must be strictly positive");
    }
  }
}

} // namespace radreact
