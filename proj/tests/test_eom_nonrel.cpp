#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "radreact/eom_nonrel.hpp"
#include "radreact/trajectory.hpp"
#include "radreact/units.hpp"

using namespace radreact;

namespace {

const Constants kConsts = Constants::gaussian_cgs();
const ParticleParams kElectron = ParticleParams::electron(kConsts);
const double kTau = tau_e(kElectron, kConsts);
const double kMass = kElectron.mass_renormalized;
const double kF0 = 1.0e-10;  // dyn

// amplitude of a pure sinusoid from two quadrature samples
double sin_amplitude(double a, double b) { return std::sqrt(a * a + b * b); }

} // namespace

TEST_CASE("fo_accel") {
  SUBCASE("constant force is exact and time independent") {
    const ForceModel f = ForceModel::constant(kF0);
    const double expect = kF0 / kMass;
    for (double t : {0.0, 1e-22, 3e-21}) {
      CHECK(fo_accel(kElectron, kConsts, f, t) == expect);
    }
  }
  SUBCASE("zero force") {
    CHECK(fo_accel(kElectron, kConsts, ForceModel::zero(), 1e-22) == 0.0);
  }
  SUBCASE("sinusoid amplitude is (F0/M) sqrt(1 + (w tau)^2)") {
    const double wt = 0.3;
    const double w = wt / kTau;
    const ForceModel f = ForceModel::sin_drive(kF0, w, 0.0);
    const double t = 0.4 / w;
    const double a1 = fo_accel(kElectron, kConsts, f, t);
    const double a2 = fo_accel(kElectron, kConsts, f, t + 0.5 * M_PI / w);
    const double expect = kF0 / kMass * std::sqrt(1.0 + wt * wt);
    CHECK(sin_amplitude(a1, a2) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("fo_sharp_accel") {
  SUBCASE("constant force") {
    const ForceModel f = ForceModel::constant(kF0);
    CHECK(fo_sharp_accel(kElectron, kConsts, f, 1e-22) == kF0 / kMass);
  }
  SUBCASE("difference from FO is (tau^2/4) fddot / M") {
    const double w = 1e-3 / kTau;
    const ForceModel f = ForceModel::sin_drive(kF0, w, 0.2);
    for (double t : {0.0, 0.3 / w, 1.1 / w}) {
      const double d = fo_sharp_accel(kElectron, kConsts, f, t) -
                       fo_accel(kElectron, kConsts, f, t);
      const double expect = 0.25 * kTau * kTau * f.eval(t).fddot / kMass;
      CHECK(d == doctest::Approx(expect).epsilon(1e-9));
    }
  }
  SUBCASE("amplitude deviation from FO is (w tau)^2/4 at w tau = 1e-3") {
    const double wt = 1e-3;
    const double w = wt / kTau;
    const ForceModel f = ForceModel::sin_drive(kF0, w, 0.0);
    const double t = 0.7 / w;
    const double s1 = fo_sharp_accel(kElectron, kConsts, f, t);
    const double s2 = fo_sharp_accel(kElectron, kConsts, f, t + 0.5 * M_PI / w);
    const double f1 = fo_accel(kElectron, kConsts, f, t);
    const double f2 = fo_accel(kElectron, kConsts, f, t + 0.5 * M_PI / w);
    const double rel = std::abs(sin_amplitude(s1, s2) / sin_amplitude(f1, f2) - 1.0);
    CHECK(rel == doctest::Approx(wt * wt / 4.0).epsilon(0.02));
  }
}

TEST_CASE("ald_extended_rhs") {
  SUBCASE("free particle with zero initial acceleration reduces to Newton") {
    StateNR st;
    st.a = 0.0;
    const auto d = ald_extended_rhs(kElectron, kConsts, ForceModel::zero(), st);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 0.0);
    CHECK(d[2] == 0.0);
  }
  SUBCASE("constant force with matched acceleration has no runaway drive") {
    StateNR st;
    st.a = kF0 / kMass;
    const auto d =
        ald_extended_rhs(kElectron, kConsts, ForceModel::constant(kF0), st);
    CHECK(d[2] == doctest::Approx(0.0).epsilon(1e-20));
  }
  SUBCASE("state must carry the acceleration") {
    StateNR st;
    CHECK_THROWS_AS(ald_extended_rhs(kElectron, kConsts, ForceModel::zero(), st),
                    std::invalid_argument);
  }
}

TEST_CASE("ald_preacceleration closed form") {
  const double a_inf = kF0 / kMass;
  CHECK(ald_preacceleration(kElectron, kConsts, kF0, 0.0) == a_inf);
  CHECK(ald_preacceleration(kElectron, kConsts, kF0, -kTau * std::log(2.0)) ==
        doctest::Approx(0.5 * a_inf).epsilon(1e-14));
  CHECK(ald_preacceleration(kElectron, kConsts, kF0, -60.0 * kTau) ==
        doctest::Approx(0.0).scale(a_inf).epsilon(1e-20));
  CHECK(ald_preacceleration(kElectron, kConsts, kF0, 5.0 * kTau) == a_inf);
}

TEST_CASE("series truncation at N = 3 reproduces the ALD system") {
  // internal units: ALD closes with a' = a - f; the N = 3 truncation closes
  // with x''' = -(f - x'') = x'' - f
  const double states[][3] = {{0.2, -0.4, 1.7}, {0.0, 0.0, -2.0}, {3.0, 1.0, 0.5}};
  for (const auto& s : states) {
    for (double f : {-1.3, 0.0, 0.8}) {
      std::vector<double> y(s, s + 3), d(3);
      series_rhs_internal(3, f, y, d);
      CHECK(d[0] == y[1]);
      CHECK(d[1] == y[2]);
      CHECK(d[2] == y[2] - f);
    }
  }
}

TEST_CASE("series transfer function converges geometrically to the closed form") {
  SUBCASE("inside the convergence radius") {
    const std::complex<double> wt(0.1, 0.0);
    const std::complex<double> closed = fo_char_closed(wt);
    double prev = 1.0;
    for (int n = 4; n <= 20; ++n) {
      const double err = std::abs(series_char_partial(n, wt) - closed) /
                         std::abs(closed);
      if (n > 4 && err > 1e-14) {
        const double ratio = err / prev;
        CHECK(ratio > 0.05);  // geometric with ratio |w tau| = 0.1
        CHECK(ratio < 0.2);
      }
      prev = err;
    }
    const double err20 = std::abs(series_char_partial(20, wt) - closed) /
                         std::abs(closed);
    CHECK(err20 <= 1e-10);
  }
  SUBCASE("outside the radius the partial sums diverge") {
    const std::complex<double> wt(1.5, 0.0);
    const std::complex<double> closed = fo_char_closed(wt);
    const double e10 = std::abs(series_char_partial(10, wt) - closed);
    const double e20 = std::abs(series_char_partial(20, wt) - closed);
    const double e30 = std::abs(series_char_partial(30, wt) - closed);
    CHECK(e20 > 10.0 * e10);
    CHECK(e30 > 10.0 * e20);
  }
  SUBCASE("order bounds enforced") {
    CHECK_THROWS_AS(series_char_partial(2, {0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModelNR::series(kElectron, 31), std::invalid_argument);
    CHECK_THROWS_AS(ModelNR::series(kElectron, 2), std::invalid_argument);
  }
}

TEST_CASE("oscillator") {
  SUBCASE("rhs and coupling") {
    const double wt = 1e-2;
    const double omega0 = wt / kTau;
    const double K = kMass * omega0 * omega0;
    const auto d = oscillator_rhs(kElectron, kConsts, K, ForceModel::zero(),
                                  0.0, 1.0e-8, 0.0);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(-K * 1.0e-8 / kMass).epsilon(1e-12));
    // dimensionless coupling zeta / sqrt(K M) = omega_0 tau_e
    const double zeta = K * kTau;
    CHECK(zeta / std::sqrt(K * kMass) == doctest::Approx(wt).epsilon(1e-12));
  }
  SUBCASE("optical frequency coupling is of order 1e-7") {
    const double omega0 = 1.6e16;
    const double K = kMass * omega0 * omega0;
    const double coupling = K * kTau / std::sqrt(K * kMass);
    CHECK(coupling > 3e-8);
    CHECK(coupling < 3e-7);
  }
  SUBCASE("tiny spring constant reduces to Newton") {
    const double K = 1e-40;
    const ForceModel f = ForceModel::constant(kF0);
    const auto d = oscillator_rhs(kElectron, kConsts, K, f, 0.0, 0.0, 0.0);
    CHECK(d[1] == doctest::Approx(kF0 / kMass).epsilon(1e-12));
  }
  SUBCASE("free decay: energy envelope decays at rate K tau_e / M") {
    const double wt = 1e-2;
    const double omega0 = wt / kTau;
    const double K = kMass * omega0 * omega0;
    const ModelNR model = ModelNR::oscillator(kElectron, K);
    StateNR init;
    init.x = 1.0e-8;
    const double period = 2.0 * M_PI / omega0;
    IntegrateOptions opt;
    opt.tol = 1e-11;
    opt.sample_dt_s = period;  // sample at whole periods
    const Trajectory traj = integrate(model, kConsts, ForceModel::zero(), init,
                                      0.0, 60.0 * period, opt);
    REQUIRE(traj.status == RunStatus::Completed);
    std::vector<double> ts, loge;
    for (const auto& p : traj.points) {
      const double e = 0.5 * K * p.x * p.x + 0.5 * kMass * p.v * p.v;
      if (e > 0.0) {
        ts.push_back(p.t);
        loge.push_back(std::log(e));
      }
    }
    const double rate = -fit_line(ts, loge).slope;
    CHECK(rate == doctest::Approx(K * kTau / kMass).epsilon(0.02));
  }
}

TEST_CASE("radiated power") {
  SUBCASE("zero force radiates nothing; doubling the force quadruples P") {
    CHECK(radiated_power_fo(kElectron, kConsts, ForceModel::zero(), 0.0) == 0.0);
    const double p1 = radiated_power_fo(kElectron, kConsts,
                                        ForceModel::constant(kF0), 0.0);
    const double p2 = radiated_power_fo(kElectron, kConsts,
                                        ForceModel::constant(2 * kF0), 0.0);
    CHECK(p2 == doctest::Approx(4.0 * p1).epsilon(1e-14));
    CHECK(p1 == doctest::Approx(kTau * kF0 * kF0 / kMass).epsilon(1e-14));
  }
  SUBCASE("positivity on a sweep") {
    const ForceModel f = ForceModel::sin_drive(kF0, 1e20, 0.4);
    for (double t = 0.0; t < 2e-19; t += 1e-21) {
      CHECK(radiated_power_fo(kElectron, kConsts, f, t) >= 0.0);
    }
  }
  SUBCASE("period-averaged Larmor comparison scales as (w tau)^2") {
    std::vector<double> wts{1e-3, 1e-2, 1e-1}, rels;
    for (double wt : wts) {
      const double w = wt / kTau;
      const ForceModel f = ForceModel::sin_drive(kF0, w, 0.0);
      const double period = 2.0 * M_PI / w;
      // uniform trapezoid over one full period of the algebraic rates
      const int n = 512;
      double e_fo = 0.0, e_la = 0.0;
      for (int i = 0; i < n; ++i) {
        const double t = period * i / n;
        const double pf = radiated_power_fo(kElectron, kConsts, f, t);
        const double a = fo_accel(kElectron, kConsts, f, t);
        const double pl = radiated_power_larmor(kElectron, kConsts, a);
        e_fo += pf;
        e_la += pl;
      }
      rels.push_back(std::abs(e_la - e_fo) / e_fo);
    }
    // exact period average gives relative difference (w tau)^2
    CHECK(rels[0] == doctest::Approx(1e-6).epsilon(0.01));
    CHECK(rels[1] == doctest::Approx(1e-4).epsilon(0.01));
    CHECK(rels[2] == doctest::Approx(1e-2).epsilon(0.01));
    const double expo = fit_loglog_slope(wts, rels);
    CHECK(expo == doctest::Approx(2.0).epsilon(0.01));
  }
}

TEST_CASE("reduce_order") {
  const ModelNR ald = ModelNR::ald(kElectron);
  const ReducedModel red = reduce_order(ald);
  CHECK(std::holds_alternative<ModelNR::FO>(red.model.variant));
  CHECK(std::string(red.note).find("structure") != std::string::npos);

  // idempotent
  const ReducedModel again = reduce_order(red.model);
  CHECK(std::holds_alternative<ModelNR::FO>(again.model.variant));

  // the reduced model evaluates the FO right-hand side
  const double w = 1e-2 / kTau;
  const ForceModel f = ForceModel::sin_drive(kF0, w, 0.1);
  for (double t : {0.0, 0.3 / w, 1.9 / w}) {
    CHECK(fo_accel(red.model.particle, kConsts, f, t) ==
          fo_accel(kElectron, kConsts, f, t));
  }
}

TEST_CASE("integrate: Newton constant force from rest") {
  const ModelNR model = ModelNR::newton(kElectron);
  const double T = 1000.0 * kTau;
  IntegrateOptions opt;
  opt.tol = 1e-10;
  const Trajectory traj = integrate(model, kConsts, ForceModel::constant(kF0),
                                    StateNR{}, 0.0, T, opt);
  REQUIRE(traj.status == RunStatus::Completed);
  const auto& last = traj.points.back();
  CHECK(last.x == doctest::Approx(0.5 * kF0 / kMass * T * T).epsilon(1e-9));
  CHECK(last.v == doctest::Approx(kF0 / kMass * T).epsilon(1e-9));
}

TEST_CASE("integrate: FO constant force acceleration column is machine-flat") {
  const ModelNR model = ModelNR::fo(kElectron);
  IntegrateOptions opt;
  opt.tol = 1e-10;
  const Trajectory traj = integrate(model, kConsts, ForceModel::constant(kF0),
                                    StateNR{}, 0.0, 500.0 * kTau, opt);
  REQUIRE(traj.status == RunStatus::Completed);
  const double expect = kF0 / kMass;
  for (const auto& p : traj.points) {
    CHECK(std::abs(p.a - expect) <= 1e-12 * expect);
  }
}

TEST_CASE("integrate: ALD free runaway detected with e-folding tau_e") {
  const ModelNR model = ModelNR::ald(kElectron);
  StateNR init;
  init.a = 1.0;  // cm/s^2 seed
  IntegrateOptions opt;
  opt.tol = 1e-10;
  const Trajectory traj = integrate(model, kConsts, ForceModel::zero(), init,
                                    0.0, 100.0 * kTau, opt);
  CHECK(traj.status == RunStatus::RunawayDetected);
  REQUIRE(traj.efolding_time_s.has_value());
  CHECK(*traj.efolding_time_s == doctest::Approx(kTau).epsilon(0.01));
  // guard fired before the nominal end of the span
  CHECK(traj.points.back().t < 100.0 * kTau);
  CHECK(std::abs(traj.points.back().a) >= 1e6);
}

TEST_CASE("integrate: ALD with matched acceleration follows the particular solution") {
  const ModelNR model = ModelNR::ald(kElectron);
  StateNR init;
  init.a = kF0 / kMass;
  IntegrateOptions opt;
  opt.tol = 1e-11;
  const Trajectory traj = integrate(model, kConsts, ForceModel::constant(kF0),
                                    init, 0.0, 5.0 * kTau, opt);
  REQUIRE(traj.status == RunStatus::Completed);
  for (const auto& p : traj.points) {
    CHECK(p.a == doctest::Approx(kF0 / kMass).epsilon(1e-6));
  }
}

TEST_CASE("integrate: FO sinusoid steady state matches the closed form") {
  const double wt = 1e-2;
  const double w = wt / kTau;
  const ForceModel f = ForceModel::sin_drive(kF0, w, 0.0);
  const ModelNR model = ModelNR::fo(kElectron);
  const StateNR init = fo_periodic_state(kElectron, kConsts, f, 0.0);
  const double period = 2.0 * M_PI / w;
  IntegrateOptions opt;
  opt.tol = 1e-11;
  opt.sample_dt_s = period / 16.0;
  const Trajectory traj =
      integrate(model, kConsts, f, init, 0.0, 3.0 * period, opt);
  REQUIRE(traj.status == RunStatus::Completed);
  const double amp = kF0 / kMass / (w * w) * std::sqrt(1.0 + wt * wt);
  for (const auto& p : traj.points) {
    const StateNR ref = fo_periodic_state(kElectron, kConsts, f, p.t);
    CHECK(p.x == doctest::Approx(ref.x).epsilon(1e-7).scale(amp));
  }
}

TEST_CASE("integrate: state validation") {
  IntegrateOptions opt;
  StateNR with_a;
  with_a.a = 1.0;
  CHECK_THROWS_AS(integrate(ModelNR::newton(kElectron), kConsts,
                            ForceModel::zero(), with_a, 0.0, kTau, opt),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(ModelNR::ald(kElectron), kConsts,
                            ForceModel::zero(), StateNR{}, 0.0, kTau, opt),
                  std::invalid_argument);
  opt.tol = -1.0;
  CHECK_THROWS_AS(integrate(ModelNR::newton(kElectron), kConsts,
                            ForceModel::zero(), StateNR{}, 0.0, kTau, opt),
                  std::invalid_argument);
}

TEST_CASE("bounded ALD branch satisfies the equation of motion") {
  SUBCASE("sinusoid particular solution") {
    const double wt = 0.05;
    const double w = wt / kTau;
    const ForceModel f = ForceModel::sin_drive(kF0, w, 0.3);
    for (double t : {0.0, 0.2 / w, 1.3 / w, 4.0 / w}) {
      const StateNR st = ald_bounded_state(kElectron, kConsts, f, t);
      REQUIRE(st.a.has_value());
      // M a - M tau adot = f with adot = -w^2 v for the periodic branch
      const double adot = -w * w * st.v;
      const double lhs = kMass * (*st.a) - kMass * kTau * adot;
      CHECK(lhs == doctest::Approx(f.eval(t).f).epsilon(1e-10).scale(kF0));
    }
  }
  SUBCASE("step force: preacceleration, continuity, rest in the far past") {
    const ForceModel f = ForceModel::step(kF0, 0.0);
    const StateNR before = ald_bounded_state(kElectron, kConsts, f, -1e-3 * kTau);
    const StateNR after = ald_bounded_state(kElectron, kConsts, f, 1e-3 * kTau);
    REQUIRE(before.a.has_value());
    CHECK(*before.a == doctest::Approx(*after.a).epsilon(1e-2));
    CHECK(before.v == doctest::Approx(after.v).epsilon(1e-2));
    const StateNR far = ald_bounded_state(kElectron, kConsts, f, -80.0 * kTau);
    CHECK(std::abs(*far.a) < 1e-30 * (kF0 / kMass));
    // the acceleration precedes the force switch-on
    const StateNR pre = ald_bounded_state(kElectron, kConsts, f, -2.0 * kTau);
    CHECK(*pre.a > 0.0);
    CHECK(f.eval(-2.0 * kTau).f == 0.0);
  }
  SUBCASE("ALD and FO particular solutions differ at order (w tau)^2") {
    std::vector<double> wts{1e-3, 1e-2, 1e-1}, devs;
    for (double wt : wts) {
      const double w = wt / kTau;
      const ForceModel f = ForceModel::sin_drive(kF0, w, 0.0);
      double dev = 0.0, amp = 0.0;
      for (double frac = 0.0; frac < 1.0; frac += 1.0 / 64.0) {
        const double t = frac * 2.0 * M_PI / w;
        const StateNR a = ald_bounded_state(kElectron, kConsts, f, t);
        const StateNR b = fo_periodic_state(kElectron, kConsts, f, t);
        dev = std::max(dev, std::abs(a.x - b.x));
        amp = std::max(amp, std::abs(b.x));
      }
      devs.push_back(dev / amp);
    }
    const double expo = fit_loglog_slope(wts, devs);
    CHECK(expo == doctest::Approx(2.0).epsilon(0.05));
  }
}
