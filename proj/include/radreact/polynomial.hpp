#pragma once

#include <complex>
#include <span>
#include <vector>

namespace radreact {

//! Polynomial in the complex frequency variable w = omega * tau_e,
//! coefficients stored ascending in degree.
class ComplexPoly {
 public:
  using C = std::complex<double>;

  //! Trims trailing (highest-degree) coefficients that are negligibly small
  //! relative to the largest coefficient; enforces degree <= 32 and a
  //! nonzero leading coefficient after normalization.
  explicit ComplexPoly(std::vector<C> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }
  double max_coeff_magnitude() const;

  C eval(C w) const;  //!< Horner

  static ComplexPoly from_roots(std::span<const C> roots, C leading = C(1.0, 0.0));

  //! All roots with multiplicity (repeated entries). Exact zero roots are
  //! deflated from the low-order coefficients first; the remaining factor is
  //! rescaled to a characteristic root magnitude before the companion-matrix
  //! eigensolve, so widely separated root scales stay resolvable.
  std::vector<C> roots() const;

 private:
  std::vector<C> coeffs_;
};

inline constexpr int kMaxPolyDegree = 32;
//! Root clustering / common-root tolerance, in units of omega*tau_e.
inline constexpr double kRootMatchTol = 1e-9;

} // namespace radreact
