#include "radreact/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radreact {

using C = ComplexPoly::C;

ComplexPoly::ComplexPoly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::invalid_argument("ComplexPoly: empty coefficient list");
  }
  double maxmag = 0.0;
  for (const C& c : coeffs_) maxmag = std::max(maxmag, std::abs(c));
  if (maxmag == 0.0) {
    throw std::invalid_argument("ComplexPoly: identically zero polynomial");
  }
  while (coeffs_.size() > 1 && std::abs(coeffs_.back()) == 0.0) {
    coeffs_.pop_back();
  }
  if (degree() > kMaxPolyDegree) {
    throw std::invalid_argument("ComplexPoly: degree exceeds 32");
  }
}

double ComplexPoly::max_coeff_magnitude() const {
  double m = 0.0;
  for (const C& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

C ComplexPoly::eval(C w) const {
  C acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * w + *it;
  }
  return acc;
}

ComplexPoly ComplexPoly::from_roots(std::span<const C> roots, C leading) {
  std::vector<C> c{leading};
  for (const C& r : roots) {
    std::vector<C> next(c.size() + 1, C(0.0, 0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];   // w * P
      next[i] -= r * c[i];   // -r * P
    }
    c = std::move(next);
  }
  return ComplexPoly(std::move(c));
}

std::vector<C> ComplexPoly::roots() const {
  std::vector<C> cs = coeffs_;
  std::vector<C> out;

  // deflate exact zero roots from the low-order coefficients; tiny nonzero
  // coefficients are physics (slow-oscillator poles) and stay
  std::size_t low = 0;
  while (low + 1 < cs.size() && std::abs(cs[low]) == 0.0) ++low;
  for (std::size_t i = 0; i < low; ++i) out.push_back(C(0.0, 0.0));
  cs.erase(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(low));

  const std::size_t n = cs.size() - 1;  // remaining degree
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(-cs[0] / cs[1]);
    return out;
  }

  // rescale w = rho * s so the reduced polynomial has roots of order unity
  double rho = std::pow(std::abs(cs[0] / cs[n]), 1.0 / static_cast<double>(n));
  if (!(rho > 0.0) || !std::isfinite(rho)) rho = 1.0;

  std::vector<C> sc(cs.size());
  double p = 1.0;
  for (std::size_t i = 0; i <= n; ++i) {
    sc[i] = cs[i] * p;
    p *= rho;
  }

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) =
        C(1.0, 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) =
        -sc[i] / sc[n];
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("ComplexPoly: eigenvalue iteration failed");
  }
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    out.push_back(solver.eigenvalues()[i] * rho);
  }
  return out;
}

} // namespace radreact
