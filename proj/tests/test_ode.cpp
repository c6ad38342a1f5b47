#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radreact/ode.hpp"

using namespace radreact;

TEST_CASE("adaptive pair reproduces the constant-force parabola") {
  const double a = 2.0;
  ode::Rhs rhs = [a](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[1];
    d[1] = a;
  };
  const std::vector<double> y0{0.0, 0.0};
  ode::Options opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-14;
  const ode::Result r = ode::integrate(rhs, 0.0, 3.0, y0, opt);
  REQUIRE(r.status == ode::Status::Completed);
  CHECK(r.t_final == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(r.y_final[0] == doctest::Approx(0.5 * a * 9.0).epsilon(1e-12));
  CHECK(r.y_final[1] == doctest::Approx(a * 3.0).epsilon(1e-12));
}

TEST_CASE("fixed-step RK4 is exact on the parabola and 4th order on a sinusoid") {
  SUBCASE("parabola to roundoff") {
    const double a = 2.0;
    ode::Rhs rhs = [a](double, std::span<const double> y, std::span<double> d) {
      d[0] = y[1];
      d[1] = a;
    };
    const std::vector<double> y0{0.0, 0.0};
    ode::Options opt;
    opt.fixed_step = 0.1;
    const ode::Result r = ode::integrate(rhs, 0.0, 2.0, y0, opt);
    CHECK(std::abs(r.y_final[0] - 0.5 * a * 4.0) < 1e-12);
  }
  SUBCASE("global error scales as h^4") {
    ode::Rhs rhs = [](double t, std::span<const double> y, std::span<double> d) {
      d[0] = y[1];
      d[1] = std::sin(3.0 * t);
    };
    // closed form from rest: v = (1 - cos 3t)/3, x = t/3 - sin(3t)/9
    auto err_at = [&](double h) {
      const std::vector<double> y0{0.0, 0.0};
      ode::Options opt;
      opt.fixed_step = h;
      const ode::Result r = ode::integrate(rhs, 0.0, 2.0, y0, opt);
      const double xe = 2.0 / 3.0 - std::sin(6.0) / 9.0;
      return std::abs(r.y_final[0] - xe);
    };
    const double e1 = err_at(0.02);
    const double e2 = err_at(0.01);
    const double order = std::log2(e1 / e2);
    CHECK(order > 3.6);
    CHECK(order < 4.4);
  }
}

TEST_CASE("breakpoints let the solver step across a force discontinuity") {
  // y' = 0 before t=1, 1 after; without the breakpoint a large step blurs
  // the jump, with it the quadrature is exact
  ode::Rhs rhs = [](double t, std::span<const double>, std::span<double> d) {
    d[0] = t >= 1.0 ? 1.0 : 0.0;
  };
  const std::vector<double> y0{0.0};
  ode::Options opt;
  opt.fixed_step = 0.8;  // deliberately straddles t = 1
  opt.breakpoints = {1.0};
  const ode::Result r = ode::integrate(rhs, 0.0, 2.0, y0, opt);
  CHECK(r.y_final[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("uniform sampling grid is honored exactly") {
  ode::Rhs rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[0];
  };
  const std::vector<double> y0{1.0};
  ode::Options opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  opt.sample_dt = 0.25;
  const ode::Result r = ode::integrate(rhs, 0.0, 2.0, y0, opt);
  REQUIRE(r.samples.size() == 9);
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    CHECK(r.samples[i].t == doctest::Approx(0.25 * static_cast<double>(i)).epsilon(1e-14));
    CHECK(r.samples[i].y[0] ==
          doctest::Approx(std::exp(r.samples[i].t)).epsilon(1e-10));
  }
}

TEST_CASE("guard aborts the run") {
  ode::Rhs rhs = [](double, std::span<const double> y, std::span<double> d) {
    d[0] = y[0];
  };
  const std::vector<double> y0{1.0};
  ode::Options opt;
  opt.guard = [](double, std::span<const double> y) { return y[0] < 10.0; };
  const ode::Result r = ode::integrate(rhs, 0.0, 5.0, y0, opt);
  CHECK(r.status == ode::Status::GuardStop);
  CHECK(r.t_final < 5.0);
  CHECK(r.y_final[0] >= 10.0);
}

TEST_CASE("bad spans are rejected") {
  ode::Rhs rhs = [](double, std::span<const double>, std::span<double> d) {
    d[0] = 0.0;
  };
  const std::vector<double> y0{0.0};
  CHECK_THROWS_AS(ode::integrate(rhs, 1.0, 1.0, y0, {}), std::invalid_argument);
  CHECK_THROWS_AS(ode::integrate(rhs, 2.0, 1.0, y0, {}), std::invalid_argument);
}
