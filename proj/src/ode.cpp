#include "radreact/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radreact::ode {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct StopGrid {
  // merged, sorted list of forced stop times in (t0, t1]
  std::vector<double> stops;
  std::size_t next = 0;

  StopGrid(double t0, double t1, const Options& opt) {
    for (double b : opt.breakpoints) {
      if (b > t0 && b < t1) stops.push_back(b);
    }
    if (opt.sample_dt) {
      const double dt = *opt.sample_dt;
      if (!(dt > 0.0)) throw std::invalid_argument("ode: sample_dt must be positive");
      const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
      for (std::size_t k = 1; k < n; ++k) stops.push_back(t0 + dt * static_cast<double>(k));
    }
    stops.push_back(t1);
    std::sort(stops.begin(), stops.end());
    // drop near-duplicates (breakpoint coinciding with a grid point)
    const double eps = 1e-12 * (std::abs(t0) + std::abs(t1) + (t1 - t0));
    std::vector<double> uniq;
    for (double s : stops) {
      if (uniq.empty() || s - uniq.back() > eps) uniq.push_back(s);
    }
    stops = std::move(uniq);
  }

  double current() const { return stops[next]; }
  bool advance() {
    ++next;
    return next < stops.size();
  }
};

double error_norm(std::span<const double> err, std::span<const double> y_old,
                  std::span<const double> y_new, const Options& opt) {
  double acc = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    double mag = std::max(std::abs(y_old[i]), std::abs(y_new[i]));
    if (i < opt.y_scale.size()) mag = std::max(mag, opt.y_scale[i]);
    const double sc = opt.abs_tol + opt.rel_tol * mag;
    const double r = err[i] / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

} // namespace

Result integrate(const Rhs& rhs, double t0, double t1,
                 std::span<const double> y0, const Options& opt) {
  if (!(t1 > t0)) throw std::invalid_argument("ode: need t1 > t0");
  const std::size_t n = y0.size();
  Result res;
  res.samples.push_back({t0, std::vector<double>(y0.begin(), y0.end())});

  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), ynew(n), err(n);

  StopGrid grid(t0, t1, opt);
  double t = t0;
  const double span = t1 - t0;
  const double t_eps = 1e-12 * (std::abs(t0) + std::abs(t1) + span);

  const bool fixed = opt.fixed_step.has_value();
  double h = fixed ? *opt.fixed_step : std::min(span / 100.0, opt.max_step);
  if (!(h > 0.0)) throw std::invalid_argument("ode: step size must be positive");
  double err_prev = 1.0;

  auto stage = [&](double tt, const std::vector<double>& yy,
                   std::vector<double>& kk) {
    rhs(tt, std::span<const double>(yy), std::span<double>(kk));
  };

  rhs(t, std::span<const double>(y), std::span<double>(k1));  // FSAL seed

  while (t < t1 - t_eps) {
    if (res.n_accepted + res.n_rejected >= opt.max_steps) {
      res.status = Status::MaxStepsExceeded;
      break;
    }
    const double stop = grid.current();
    double h_try = std::min({h, opt.max_step, stop - t});
    bool hit_stop = (t + h_try >= stop - t_eps);
    if (hit_stop) h_try = stop - t;
    // a step ending on a stop evaluates its end stages one ulp to the left,
    // so a force jump at the stop never leaks into the closing quadrature
    const double t_end_eval =
        hit_stop ? std::nextafter(stop, -std::numeric_limits<double>::infinity())
                 : t + h_try;

    if (fixed) {
      // classic RK4
      stage(t, y, k1);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h_try * k1[i];
      stage(t + 0.5 * h_try, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h_try * k2[i];
      stage(t + 0.5 * h_try, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h_try * k3[i];
      stage(t_end_eval, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        y[i] += h_try / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      t = hit_stop ? stop : t + h_try;
      ++res.n_accepted;
    } else {
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h_try * a21 * k1[i];
      stage(t + c2 * h_try, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h_try * (a31 * k1[i] + a32 * k2[i]);
      stage(t + c3 * h_try, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h_try * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      stage(t + c4 * h_try, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h_try * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                  a54 * k4[i]);
      stage(t + c5 * h_try, ytmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h_try * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
      stage(t_end_eval, ytmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h_try * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
      stage(t_end_eval, ynew, k7);
      for (std::size_t i = 0; i < n; ++i)
        err[i] = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);

      const double en = error_norm(err, y, ynew, opt);
      if (en <= 1.0) {
        t = hit_stop ? stop : t + h_try;
        y.swap(ynew);
        k1.swap(k7);  // FSAL
        ++res.n_accepted;
        // PI controller (Gustafsson)
        const double e_clip = std::max(en, 1e-10);
        double fac = 0.9 * std::pow(e_clip, -0.7 / 5.0) *
                     std::pow(std::max(err_prev, 1e-10), 0.4 / 5.0);
        fac = std::clamp(fac, 0.2, 5.0);
        h = h_try * fac;
        err_prev = e_clip;
      } else {
        ++res.n_rejected;
        double fac = std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
        h = h_try * fac;
        const double h_floor =
            16.0 * std::numeric_limits<double>::epsilon() * std::abs(t);
        if (h < h_floor || !(h > 0.0)) {
          res.status = Status::StepUnderflow;
          break;
        }
        continue;  // retry, nothing accepted
      }
    }

    const bool at_stop = hit_stop;
    const bool record = !opt.sample_dt || at_stop;
    if (record) res.samples.push_back({t, y});
    if (opt.guard && !opt.guard(t, std::span<const double>(y))) {
      res.status = Status::GuardStop;
      break;
    }
    if (at_stop) {
      if (!grid.advance()) break;
      if (!fixed) stage(t, y, k1);  // re-seed across a potential discontinuity
    }
  }

  res.t_final = t;
  res.y_final = y;
  return res;
}

} // namespace radreact::ode
