#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "radreact/causality.hpp"
#include "radreact/units.hpp"

using namespace radreact;
using C = std::complex<double>;

namespace {

const Constants kConsts = Constants::gaussian_cgs();
const ParticleParams kElectron = ParticleParams::electron(kConsts);
const double kTau = tau_e(kElectron, kConsts);

const Pole* pole_near(const PoleReport& rep, C target, double tol = 1e-6) {
  for (const Pole& p : rep.poles) {
    if (std::abs(p.omega - target) < tol) return &p;
  }
  return nullptr;
}

} // namespace

TEST_CASE("ALD free particle is non-causal with a pole at +i/tau_e") {
  const auto rt = susceptibility_of(ModelNR::ald(kElectron), kConsts);
  const PoleReport rep = find_poles(rt);
  CHECK(rep.verdict == CausalityVerdict::NonCausal);
  REQUIRE(rep.offending.size() == 1);
  CHECK(std::abs(rep.offending[0] - C(0.0, 1.0)) <= 1e-9);

  const Pole* origin = pole_near(rep, C(0.0, 0.0));
  REQUIRE(origin != nullptr);
  CHECK(origin->multiplicity == 2);
  CHECK(rep.max_residual < 1e-8);
}

TEST_CASE("Newton free particle is marginal (double pole at the origin)") {
  const PoleReport rep = find_poles(susceptibility_of(ModelNR::newton(kElectron), kConsts));
  CHECK(rep.verdict == CausalityVerdict::Marginal);
  REQUIRE(rep.poles.size() == 1);
  CHECK(rep.poles[0].multiplicity == 2);
  CHECK(std::abs(rep.poles[0].omega) == 0.0);
  CHECK(rep.offending.empty());
}

TEST_CASE("FO and FOSharp have no upper-half-plane poles") {
  for (const ModelNR& m : {ModelNR::fo(kElectron), ModelNR::fo_sharp(kElectron)}) {
    const PoleReport rep = find_poles(susceptibility_of(m, kConsts));
    CHECK(rep.offending.empty());
    CHECK(rep.verdict == CausalityVerdict::Marginal);  // free particle, poles on the axis
  }
}

TEST_CASE("oscillator poles sit just below the real axis") {
  const double wt = 1e-7;
  const double omega0 = wt / kTau;
  const double K = kElectron.mass_renormalized * omega0 * omega0;
  const PoleReport rep =
      find_poles(susceptibility_of(ModelNR::oscillator(kElectron, K), kConsts));
  CHECK(rep.verdict == CausalityVerdict::Causal);
  CHECK(rep.offending.empty());
  REQUIRE(rep.poles.size() == 2);
  // omega = +-omega_0 tau_e - i (omega_0 tau_e)^2 / 2
  const double im_expect = -0.5 * wt * wt;
  for (const Pole& p : rep.poles) {
    CHECK(std::abs(std::abs(p.omega.real()) - wt) <= 1e-3 * wt);
    CHECK(p.omega.imag() == doctest::Approx(im_expect).epsilon(1e-3));
  }
  CHECK((rep.poles[0].omega.real() > 0) != (rep.poles[1].omega.real() > 0));
}

TEST_CASE("oscillator stays causal across the underdamped range") {
  for (double wt : {1e-8, 1e-4, 1e-2, 0.5, 1.0, 1.9}) {
    const double omega0 = wt / kTau;
    const double K = kElectron.mass_renormalized * omega0 * omega0;
    const PoleReport rep = find_poles(
        susceptibility_of(ModelNR::oscillator(kElectron, K), kConsts));
    CHECK(rep.verdict == CausalityVerdict::Causal);
  }
}

TEST_CASE("series truncations: poles match the roots-of-unity oracle") {
  // D_N = -w^2 (1 + sum_{m=1..N-2} (iw)^m) = -w^2 (1 - (iw)^{N-1})/(1 - iw),
  // so beyond the double origin pole the roots satisfy (iw)^{N-1} = 1 with
  // iw != 1: w_k = exp(i (2 pi k/(N-1) - pi/2)), k = 1..N-2. Every
  // truncation has upper-half roots; they are reported, not suppressed.
  for (int n = 3; n <= 30; ++n) {
    const PoleReport rep = find_poles(
        susceptibility_of(ModelNR::series(kElectron, n), kConsts));

    std::vector<C> expected{C(0.0, 0.0), C(0.0, 0.0)};
    int n_upper = 0;
    for (int k = 1; k <= n - 2; ++k) {
      const double th = 2.0 * M_PI * k / (n - 1) - M_PI / 2.0;
      const C w = std::polar(1.0, th);
      expected.push_back(w);
      if (w.imag() > 1e-9) ++n_upper;
    }

    std::size_t found = 0;
    for (const Pole& p : rep.poles) found += static_cast<std::size_t>(p.multiplicity);
    CHECK(found == expected.size());

    for (const C& e : expected) {
      double best = 1e300;
      for (const Pole& p : rep.poles) best = std::min(best, std::abs(p.omega - e));
      CHECK(best <= 1e-8);
    }

    CHECK(n_upper > 0);  // all truncations reintroduce acausal roots
    CHECK(rep.verdict == CausalityVerdict::NonCausal);
    CHECK(static_cast<int>(rep.offending.size()) == n_upper);
  }
}

TEST_CASE("pole finder recovers random root sets to 1e-8") {
  std::mt19937_64 gen(20260810);
  std::uniform_real_distribution<double> re(-3.0, 3.0);
  std::uniform_int_distribution<int> deg(2, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = deg(gen);
    std::vector<C> roots;
    while (static_cast<int>(roots.size()) < d) {
      const C cand(re(gen), re(gen));
      bool ok = true;
      for (const C& r : roots) ok &= std::abs(cand - r) >= 1e-3;
      if (ok) roots.push_back(cand);
    }
    const ComplexPoly poly = ComplexPoly::from_roots(roots, C(1.0, 0.0));
    const auto found = poly.roots();
    REQUIRE(found.size() == roots.size());
    for (const C& r : roots) {
      double best = 1e300;
      for (const C& f : found) best = std::min(best, std::abs(f - r));
      CHECK(best / std::max(1.0, std::abs(r)) <= 1e-8);
    }
  }
}

TEST_CASE("residual audit: computed poles annihilate the denominator") {
  for (const ModelNR& m :
       {ModelNR::newton(kElectron), ModelNR::ald(kElectron), ModelNR::fo(kElectron),
        ModelNR::fo_sharp(kElectron), ModelNR::series(kElectron, 12)}) {
    const PoleReport rep = find_poles(susceptibility_of(m, kConsts));
    CHECK(rep.max_residual < 1e-8);
  }
}

TEST_CASE("alpha symmetry: alpha(-conj w) = conj(alpha(w))") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double wt = 1e-3;
  const double omega0 = wt / kTau;
  const double K = kElectron.mass_renormalized * omega0 * omega0;
  const std::vector<ModelNR> models{
      ModelNR::newton(kElectron),  ModelNR::ald(kElectron),
      ModelNR::fo(kElectron),      ModelNR::fo_sharp(kElectron),
      ModelNR::series(kElectron, 9), ModelNR::oscillator(kElectron, K)};
  for (const ModelNR& m : models) {
    const RationalTransfer rt = susceptibility_of(m, kConsts);
    for (int i = 0; i < 40; ++i) {
      const C w(u(gen), u(gen));
      const C lhs = rt.eval(-std::conj(w));
      const C rhs = std::conj(rt.eval(w));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("rational transfer construction rejects shared roots") {
  // numerator (w - i) against denominator w (w - i)
  const ComplexPoly num = ComplexPoly::from_roots(std::vector<C>{C(0.0, 1.0)});
  const ComplexPoly den =
      ComplexPoly::from_roots(std::vector<C>{C(0.0, 0.0), C(0.0, 1.0)});
  CHECK_THROWS_AS(RationalTransfer(num, den), std::invalid_argument);

  // constant denominator is degenerate
  CHECK_THROWS_AS(RationalTransfer(ComplexPoly({C(1.0, 0.0)}),
                                   ComplexPoly({C(2.0, 0.0)})),
                  std::invalid_argument);
}

TEST_CASE("degree cap") {
  const std::vector<C> coeffs(34, C(1.0, 0.0));
  CHECK_THROWS_AS(ComplexPoly{coeffs}, std::invalid_argument);
}

TEST_CASE("Ohmic memory function has a positive real part") {
  const double K = 1.0e-2;  // dyn/cm
  const OhmicRealPartReport rep = verify_positive_real_part(K, kElectron, kConsts);
  CHECK(rep.verdict == CausalityVerdict::Causal);
  CHECK(rep.re_mu_tilde == doctest::Approx(K * kTau).epsilon(1e-14));
  CHECK(rep.re_mu_tilde > 0.0);

  const OhmicRealPartReport doubled = verify_positive_real_part(2 * K, kElectron, kConsts);
  CHECK(doubled.re_mu_tilde == doctest::Approx(2.0 * rep.re_mu_tilde).epsilon(1e-14));

  const OhmicRealPartReport degenerate = verify_positive_real_part(0.0, kElectron, kConsts);
  CHECK(degenerate.verdict == CausalityVerdict::Marginal);
  CHECK(degenerate.re_mu_tilde == 0.0);
}
