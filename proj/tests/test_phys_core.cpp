#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "radreact/constants.hpp"
#include "radreact/force.hpp"
#include "radreact/form_factor.hpp"
#include "radreact/particle.hpp"
#include "radreact/units.hpp"

using namespace radreact;

namespace {
const Constants kConsts = Constants::gaussian_cgs();
const ParticleParams kElectron = ParticleParams::electron(kConsts);
}

TEST_CASE("constants are positive and validate") {
  CHECK_NOTHROW(kConsts.validate());
  Constants bad = kConsts;
  bad.c = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("tau_e for electron constants") {
  const double tau = tau_e(kElectron, kConsts);
  // about 6e-24 s
  CHECK(std::abs(tau - 6.0e-24) / 6.0e-24 < 0.05);
  CHECK(tau == doctest::Approx(6.266e-24).epsilon(1e-3));
}

TEST_CASE("tau_e scaling laws") {
  ParticleParams p = kElectron;
  p.charge = 0.0;
  CHECK(tau_e(p, kConsts) == 0.0);

  ParticleParams doubled = kElectron;
  doubled.charge = 2.0 * kElectron.charge;
  CHECK(tau_e(doubled, kConsts) ==
        doctest::Approx(4.0 * tau_e(kElectron, kConsts)).epsilon(1e-14));

  ParticleParams bad = kElectron;
  bad.mass_renormalized = 0.0;
  CHECK_THROWS_AS(tau_e(bad, kConsts), std::domain_error);
}

TEST_CASE("cutoff limit") {
  const double lim = cutoff_limit(kElectron, kConsts);
  CHECK(std::abs(lim - 1.60e23) / 1.60e23 < 0.05);

  // halving the mass doubles tau_e and halves the limit
  ParticleParams half = kElectron;
  half.mass_renormalized = 0.5 * kElectron.mass_renormalized;
  CHECK(cutoff_limit(half, kConsts) == doctest::Approx(0.5 * lim).epsilon(1e-14));
}

TEST_CASE("renormalize") {
  const double M = kElectron.mass_renormalized;
  const double q = kElectron.charge;
  const double lim = cutoff_limit(kElectron, kConsts);

  SUBCASE("cutoff at the limit gives zero bare mass exactly") {
    const RenormResult r = renormalize(M, lim, q, kConsts);
    CHECK(r.bare_mass == 0.0);
    CHECK(r.verdict == CausalityVerdict::Marginal);
  }
  SUBCASE("no cutoff interaction") {
    const RenormResult r = renormalize(M, 0.0, q, kConsts);
    CHECK(r.bare_mass == M);
    CHECK(r.verdict == CausalityVerdict::Causal);
  }
  SUBCASE("half the limit halves the mass") {
    const RenormResult r = renormalize(M, 0.5 * lim, q, kConsts);
    CHECK(r.bare_mass == doctest::Approx(0.5 * M).epsilon(1e-14));
  }
  SUBCASE("beyond the limit is a physics verdict, not a crash") {
    const RenormResult r = renormalize(M, 1.5 * lim, q, kConsts);
    CHECK(r.verdict == CausalityVerdict::NonCausal);
    CHECK(r.bare_mass < 0.0);
    CHECK(std::string(r.message).find("causality") != std::string::npos);
  }
  SUBCASE("inversion: m + tau_e Omega M recovers M") {
    const double tau = tau_e(kElectron, kConsts);
    for (double frac : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
      const double omega = frac * lim;
      const RenormResult r = renormalize(M, omega, q, kConsts);
      CHECK(r.bare_mass + tau * omega * M == doctest::Approx(M).epsilon(1e-14));
    }
  }
  SUBCASE("particle construction rejects a non-causal cutoff") {
    CHECK_THROWS_AS(ParticleParams::make(q, M, 1.5 * lim, kConsts),
                    std::domain_error);
    const ParticleParams ok = ParticleParams::make(q, M, lim, kConsts);
    CHECK(ok.bare_mass == 0.0);
  }
}

TEST_CASE("force models: analytic variants") {
  SUBCASE("constant") {
    const ForceModel f = ForceModel::constant(2.5);
    for (double t : {-1.0, 0.0, 3.7}) {
      const ForceSample s = f.eval(t);
      CHECK(s.f == 2.5);
      CHECK(s.fdot == 0.0);
      CHECK(s.fddot == 0.0);
    }
  }
  SUBCASE("sin drive derivatives") {
    const double f0 = 1.5, w = 2.0;
    const ForceModel f = ForceModel::sin_drive(f0, w, 0.0);
    const double t = 0.3;
    const ForceSample s = f.eval(t);
    CHECK(s.f == doctest::Approx(f0 * std::sin(w * t)).epsilon(1e-15));
    CHECK(s.fdot == doctest::Approx(f0 * w * std::cos(w * t)).epsilon(1e-15));
    CHECK(s.fddot == doctest::Approx(-f0 * w * w * std::sin(w * t)).epsilon(1e-15));
  }
  SUBCASE("step reports zero derivative away from t_on and flags the jump") {
    const ForceModel f = ForceModel::step(1.0, 0.5);
    CHECK(f.eval(0.4).f == 0.0);
    CHECK(f.eval(0.6).f == 1.0);
    CHECK(f.eval(0.5).f == 1.0);
    CHECK(f.eval(0.4).fdot == 0.0);
    CHECK(f.eval(0.6).fdot == 0.0);
    CHECK(f.has_discontinuity());
    REQUIRE(f.breakpoints().size() == 1);
    CHECK(f.breakpoints()[0] == 0.5);
  }
  SUBCASE("gaussian pulse derivatives close on finite differences") {
    const ForceModel f = ForceModel::gaussian_pulse(2.0, 1.0, 0.3);
    const double t = 1.2, h = 1e-6;
    const ForceSample s = f.eval(t);
    const double fd1 = (f.eval(t + h).f - f.eval(t - h).f) / (2 * h);
    const double fd2 = (f.eval(t + h).f - 2 * s.f + f.eval(t - h).f) / (h * h);
    CHECK(s.fdot == doctest::Approx(fd1).epsilon(1e-8));
    CHECK(s.fddot == doctest::Approx(fd2).epsilon(1e-3));
  }
}

TEST_CASE("tabulated force: second-order convergence of the derivatives") {
  // sample sin(t) on shrinking spacings; max error of fdot and fddot over
  // the interior must fall by ~4x per halving
  auto max_errors = [](double h) {
    const double t0 = 0.0, t1 = 6.283185307179586;
    const auto n = static_cast<std::size_t>(std::round((t1 - t0) / h)) + 1;
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = std::sin(t0 + h * static_cast<double>(i));
    const ForceModel f = ForceModel::tabulated(t0, h, vals);
    double e1 = 0.0, e2 = 0.0;
    for (double t = t0 + 2 * h; t <= t1 - 2 * h; t += 0.37 * h) {
      const ForceSample s = f.eval(t);
      e1 = std::max(e1, std::abs(s.fdot - std::cos(t)));
      e2 = std::max(e2, std::abs(s.fddot + std::sin(t)));
    }
    return std::pair{e1, e2};
  };
  const auto [e1a, e2a] = max_errors(0.05);
  const auto [e1b, e2b] = max_errors(0.025);
  CHECK(e1a / e1b > 3.0);
  CHECK(e1a / e1b < 5.0);
  CHECK(e2a / e2b > 3.0);
  CHECK(e2a / e2b < 5.0);
}

TEST_CASE("tabulated force: domain checks") {
  const ForceModel f = ForceModel::tabulated(0.0, 0.1, {0.0, 1.0, 0.0});
  CHECK_NOTHROW(f.eval(0.15));
  CHECK_THROWS_AS(f.eval(-0.05), std::out_of_range);
  CHECK_THROWS_AS(f.eval(0.25), std::out_of_range);
  CHECK_THROWS_AS(ForceModel::tabulated(0.0, 0.1, {1.0, 2.0}),
                  std::invalid_argument);
  REQUIRE(f.domain().has_value());
  CHECK(f.domain()->first == 0.0);
  CHECK(f.domain()->second == doctest::Approx(0.2));
}

TEST_CASE("form factors") {
  const double omega_c = 3.0;
  const FormFactor fey = FormFactor::feynman(omega_c);
  const FormFactor shp = FormFactor::sharp(omega_c);

  CHECK(fey(0.0) == 1.0);
  CHECK(shp(0.0) == 1.0);

  double prev_f = 2.0, prev_s = 2.0;
  for (double w = 0.0; w < 30.0; w += 0.25) {
    const double vf = fey(w), vs = shp(w);
    CHECK(vf > 0.0);
    CHECK(vf <= 1.0);
    CHECK(vs > 0.0);
    CHECK(vs <= 1.0);
    CHECK(vs <= vf + 1e-15);  // sharper cutoff decays faster
    CHECK(vf <= prev_f);      // monotone in |w|
    CHECK(vs <= prev_s);
    prev_f = vf;
    prev_s = vs;
    CHECK(fey(-w) == vf);
  }
  // half-power point of the Feynman factor sits at the cutoff
  CHECK(fey(omega_c) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("internal unit scaling round-trips") {
  const Scales sc = Scales::internal(kElectron, kConsts);
  CHECK(sc.time_s == tau_e(kElectron, kConsts));
  CHECK(sc.mass_g == kElectron.mass_renormalized);
  CHECK(sc.velocity() == doctest::Approx(kConsts.c).epsilon(1e-15));

  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> mag(-20.0, 20.0);
  const double units[] = {sc.time_s,     sc.mass_g,  sc.length_cm,
                          sc.velocity(), sc.accel(), sc.force(),
                          sc.energy(),   sc.power(), sc.spring(),
                          sc.damping(),  sc.frequency()};
  for (int i = 0; i < 2000; ++i) {
    const double value = std::pow(10.0, mag(gen));
    for (double u : units) {
      const double roundtrip = to_physical(to_internal(value, u), u);
      CHECK(std::abs(roundtrip - value) <= 1e-12 * value);
    }
  }
}
