#include "radreact/causality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radreact/units.hpp"

namespace radreact {

using C = std::complex<double>;

RationalTransfer::RationalTransfer(ComplexPoly num, ComplexPoly den)
    : numerator(std::move(num)), denominator(std::move(den)) {
  if (denominator.degree() < 1) {
    throw std::invalid_argument("RationalTransfer: denominator degree must be >= 1");
  }
  if (numerator.degree() >= 1) {
    const auto nr = numerator.roots();
    const auto dr = denominator.roots();
    for (const C& a : nr) {
      for (const C& b : dr) {
        if (std::abs(a - b) < kRootMatchTol) {
          throw std::invalid_argument(
              "RationalTransfer: numerator and denominator share a root");
        }
      }
    }
  }
}

C RationalTransfer::eval(C w) const {
  return numerator.eval(w) / denominator.eval(w);
}

RationalTransfer susceptibility_of(const ModelNR& model, const Constants& k) {
  const double mass = 1.0;  // internal units: M = 1, w in 1/tau_e
  struct Visitor {
    double mass;
    const ModelNR* model;
    const Constants* consts;

    RationalTransfer operator()(const ModelNR::Newton&) const {
      return {ComplexPoly({C(1.0, 0.0)}),
              ComplexPoly({C(0.0, 0.0), C(0.0, 0.0), C(-mass, 0.0)})};
    }
    RationalTransfer operator()(const ModelNR::ALD&) const {
      // -M w^2 (1 + i w)
      return {ComplexPoly({C(1.0, 0.0)}),
              ComplexPoly({C(0.0, 0.0), C(0.0, 0.0), C(-mass, 0.0),
                           C(0.0, -mass)})};
    }
    RationalTransfer operator()(const ModelNR::FO&) const {
      return {ComplexPoly({C(1.0, 0.0), C(0.0, -1.0)}),
              ComplexPoly({C(0.0, 0.0), C(0.0, 0.0), C(-mass, 0.0)})};
    }
    RationalTransfer operator()(const ModelNR::FOSharp&) const {
      // (1 - i w/2)^2 = 1 - i w - w^2/4
      return {ComplexPoly({C(1.0, 0.0), C(0.0, -1.0), C(-0.25, 0.0)}),
              ComplexPoly({C(0.0, 0.0), C(0.0, 0.0), C(-mass, 0.0)})};
    }
    RationalTransfer operator()(const ModelNR::Series& s) const {
      // D_N(w) = -M w^2 + M sum_{n=3..N} (i w)^n; coefficient of w^n is M i^n
      std::vector<C> den(static_cast<std::size_t>(s.order) + 1, C(0.0, 0.0));
      den[2] = C(-mass, 0.0);
      C ipow(0.0, -1.0);  // i^3 = -i, then advance
      for (int n = 3; n <= s.order; ++n) {
        den[static_cast<std::size_t>(n)] = mass * ipow;
        ipow *= C(0.0, 1.0);
      }
      return {ComplexPoly({C(1.0, 0.0)}), ComplexPoly(std::move(den))};
    }
    RationalTransfer operator()(const ModelNR::Oscillator& o) const {
      const Scales sc = Scales::internal(model->particle, *consts);
      const double k_int = o.spring_k / sc.spring();  // (omega_0 tau_e)^2
      // K - M w^2 - i w K
      return {ComplexPoly({C(1.0, 0.0)}),
              ComplexPoly({C(k_int, 0.0), C(0.0, -k_int), C(-mass, 0.0)})};
    }
  };
  return std::visit(Visitor{mass, &model, &k}, model.variant);
}

PoleReport find_poles(const RationalTransfer& rt) {
  PoleReport rep;
  const auto raw = rt.denominator.roots();
  if (raw.empty()) {
    throw std::invalid_argument("find_poles: degenerate denominator");
  }

  // cluster multiple roots at the matching tolerance
  std::vector<C> sorted = raw;
  std::sort(sorted.begin(), sorted.end(), [](const C& a, const C& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    C sum = sorted[i];
    int mult = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (!used[j] && std::abs(sorted[j] - sorted[i]) < kRootMatchTol) {
        sum += sorted[j];
        ++mult;
        used[j] = true;
      }
    }
    rep.poles.push_back({sum / static_cast<double>(mult), mult});
  }

  const double coeff_scale = rt.denominator.max_coeff_magnitude();
  bool any_upper = false;
  bool any_on_axis = false;
  for (const Pole& p : rep.poles) {
    // half-plane classification is relative to the pole's own magnitude, so
    // a slow oscillator pole at -i (w0 tau_e)^2/2 is still resolved
    const double axis_tol = kRootMatchTol * std::abs(p.omega);
    if (p.omega.imag() > axis_tol) {
      any_upper = true;
      rep.offending.push_back(p.omega);
    } else if (std::abs(p.omega.imag()) <= axis_tol) {
      any_on_axis = true;
    }
    rep.max_residual = std::max(
        rep.max_residual, std::abs(rt.denominator.eval(p.omega)) / coeff_scale);
  }
  rep.verdict = any_upper ? CausalityVerdict::NonCausal
               : any_on_axis ? CausalityVerdict::Marginal
                             : CausalityVerdict::Causal;
  return rep;
}

OhmicRealPartReport verify_positive_real_part(double spring_k,
                                              const ParticleParams& p,
                                              const Constants& k) {
  if (spring_k < 0.0) {
    throw std::invalid_argument("verify_positive_real_part: K must be >= 0");
  }
  OhmicRealPartReport rep;
  rep.re_mu_tilde = spring_k * tau_e(p, k);
  rep.verdict = spring_k > 0.0 ? CausalityVerdict::Causal
                               : CausalityVerdict::Marginal;
  return rep;
}

} // namespace radreact
