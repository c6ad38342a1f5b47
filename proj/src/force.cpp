#include "radreact/force.hpp"

#include <cmath>
#include <stdexcept>

namespace radreact {

namespace {

// Node-wise finite differences for a uniform table, all second order.
double node_slope(const std::vector<double>& f, std::size_t i, double h) {
  const std::size_t n = f.size();
  if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return (f[i + 1] - f[i - 1]) / (2.0 * h);
}

double node_curvature(const std::vector<double>& f, std::size_t i, double h) {
  const std::size_t n = f.size();
  const double h2 = h * h;
  if (i == 0) {
    if (n >= 4) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    return (f[0] - 2.0 * f[1] + f[2]) / h2;
  }
  if (i == n - 1) {
    if (n >= 4) return (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / h2;
  }
  return (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
}

ForceSample eval_tabulated(const ForceModel::Tabulated& tab, double t) {
  const std::size_t n = tab.values.size();
  const double t_end = tab.t0 + tab.dt * static_cast<double>(n - 1);
  // a hair of slack so grid endpoints reached through rounding still resolve
  const double slack = 1e-12 * (std::abs(tab.t0) + std::abs(t_end) + tab.dt);
  if (t < tab.t0 - slack || t > t_end + slack) {
    throw std::out_of_range("ForceModel: query outside tabulated domain");
  }
  double s = (t - tab.t0) / tab.dt;
  if (s < 0.0) s = 0.0;
  if (s > static_cast<double>(n - 1)) s = static_cast<double>(n - 1);
  std::size_t j = static_cast<std::size_t>(s);
  if (j >= n - 1) j = n - 2;
  const double th = s - static_cast<double>(j);

  const double f0 = tab.values[j];
  const double f1 = tab.values[j + 1];
  const double d0 = node_slope(tab.values, j, tab.dt);
  const double d1 = node_slope(tab.values, j + 1, tab.dt);
  const double c0 = node_curvature(tab.values, j, tab.dt);
  const double c1 = node_curvature(tab.values, j + 1, tab.dt);

  // cubic Hermite in f; node finite differences interpolated linearly for
  // the derivatives keep everything second-order accurate off the nodes
  const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
  const double h10 = th * (1.0 - th) * (1.0 - th);
  const double h01 = th * th * (3.0 - 2.0 * th);
  const double h11 = th * th * (th - 1.0);

  ForceSample out;
  out.f = h00 * f0 + h10 * tab.dt * d0 + h01 * f1 + h11 * tab.dt * d1;
  out.fdot = (1.0 - th) * d0 + th * d1;
  out.fddot = (1.0 - th) * c0 + th * c1;
  return out;
}

} // namespace

ForceModel ForceModel::zero() { return ForceModel{Zero{}}; }

ForceModel ForceModel::constant(double f0) { return ForceModel{Constant{f0}}; }

ForceModel ForceModel::step(double f0, double t_on) {
  return ForceModel{Step{f0, t_on}};
}

ForceModel ForceModel::sin_drive(double f0, double omega, double phase) {
  return ForceModel{SinDrive{f0, omega, phase}};
}

ForceModel ForceModel::gaussian_pulse(double f0, double t0, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("ForceModel: pulse width must be positive");
  }
  return ForceModel{GaussianPulse{f0, t0, sigma}};
}

ForceModel ForceModel::tabulated(double t0, double dt, std::vector<double> values) {
  if (values.size() < 3) {
    throw std::invalid_argument("ForceModel: tabulated force needs >= 3 samples");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ForceModel: tabulated spacing must be positive");
  }
  return ForceModel{Tabulated{t0, dt, std::move(values)}};
}

ForceSample ForceModel::eval(double t) const {
  return std::visit(
      [t](const auto& m) -> ForceSample {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Zero>) {
          return {};
        } else if constexpr (std::is_same_v<T, Constant>) {
          return {m.f0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, Step>) {
          return {t >= m.t_on ? m.f0 : 0.0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, SinDrive>) {
          const double th = m.omega * t + m.phase;
          const double s = std::sin(th);
          const double c = std::cos(th);
          return {m.f0 * s, m.f0 * m.omega * c, -m.f0 * m.omega * m.omega * s};
        } else if constexpr (std::is_same_v<T, GaussianPulse>) {
          const double u = (t - m.t0) / m.sigma;
          const double g = m.f0 * std::exp(-0.5 * u * u);
          const double inv_s2 = 1.0 / (m.sigma * m.sigma);
          return {g, -u / m.sigma * g, (u * u - 1.0) * inv_s2 * g};
        } else {
          return eval_tabulated(m, t);
        }
      },
      v_);
}

std::vector<double> ForceModel::breakpoints() const {
  if (const auto* s = std::get_if<Step>(&v_)) return {s->t_on};
  return {};
}

std::optional<std::pair<double, double>> ForceModel::domain() const {
  if (const auto* tab = std::get_if<Tabulated>(&v_)) {
    const double t_end =
        tab->t0 + tab->dt * static_cast<double>(tab->values.size() - 1);
    return std::make_pair(tab->t0, t_end);
  }
  return std::nullopt;
}

bool ForceModel::has_discontinuity() const {
  return std::holds_alternative<Step>(v_);
}

} // namespace radreact
