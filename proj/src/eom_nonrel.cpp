#include "radreact/eom_nonrel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radreact/ode.hpp"
#include "radreact/units.hpp"

namespace radreact {

namespace {

void check_series_order(int order) {
  if (order < kSeriesMinOrder || order > kSeriesMaxOrder) {
    throw std::invalid_argument("ModelNR: series truncation order out of [3,30]");
  }
}

// Least-squares slope of ln|a| vs t over the recorded samples; returns the
// e-folding time 1/slope, or nullopt when the fit is degenerate.
std::optional<double> fit_efolding(const std::vector<ode::Sample>& samples,
                                   int a_index) {
  std::vector<double> ts, las;
  for (const auto& s : samples) {
    const double a = std::abs(s.y[static_cast<std::size_t>(a_index)]);
    if (a > 0.0) {
      ts.push_back(s.t);
      las.push_back(std::log(a));
    }
  }
  if (ts.size() < 3) return std::nullopt;
  double mt = 0.0, ml = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += las[i];
  }
  mt /= static_cast<double>(ts.size());
  ml /= static_cast<double>(ts.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxx += (ts[i] - mt) * (ts[i] - mt);
    sxy += (ts[i] - mt) * (las[i] - ml);
  }
  if (!(sxx > 0.0)) return std::nullopt;
  const double slope = sxy / sxx;
  if (!(slope > 0.0)) return std::nullopt;
  return 1.0 / slope;
}

} // namespace

ModelNR ModelNR::newton(ParticleParams p) { return {Newton{}, std::move(p)}; }
ModelNR ModelNR::ald(ParticleParams p) { return {ALD{}, std::move(p)}; }
ModelNR ModelNR::fo(ParticleParams p) { return {FO{}, std::move(p)}; }
ModelNR ModelNR::fo_sharp(ParticleParams p) { return {FOSharp{}, std::move(p)}; }

ModelNR ModelNR::series(ParticleParams p, int order) {
  check_series_order(order);
  return {Series{order}, std::move(p)};
}

ModelNR ModelNR::oscillator(ParticleParams p, double spring_k) {
  if (!(spring_k > 0.0)) {
    throw std::invalid_argument("ModelNR: oscillator spring constant must be positive");
  }
  return {Oscillator{spring_k}, std::move(p)};
}

const char* ModelNR::name() const {
  struct Visitor {
    const char* operator()(const Newton&) const { return "newton"; }
    const char* operator()(const ALD&) const { return "ald"; }
    const char* operator()(const FO&) const { return "fo"; }
    const char* operator()(const FOSharp&) const { return "fo_sharp"; }
    const char* operator()(const Series&) const { return "series"; }
    const char* operator()(const Oscillator&) const { return "oscillator"; }
  };
  return std::visit(Visitor{}, variant);
}

double fo_accel(const ParticleParams& p, const Constants& k,
                const ForceModel& force, double t) {
  const double tau = tau_e(p, k);
  const ForceSample s = force.eval(t);
  return (s.f + tau * s.fdot) / p.mass_renormalized;
}

double fo_sharp_accel(const ParticleParams& p, const Constants& k,
                      const ForceModel& force, double t) {
  const double tau = tau_e(p, k);
  const ForceSample s = force.eval(t);
  return (s.f + tau * s.fdot + 0.25 * tau * tau * s.fddot) /
         p.mass_renormalized;
}

std::array<double, 3> ald_extended_rhs(const ParticleParams& p,
                                       const Constants& k,
                                       const ForceModel& force,
                                       const StateNR& state) {
  if (!state.a) {
    throw std::invalid_argument("ald_extended_rhs: state must carry an acceleration");
  }
  const double tau = tau_e(p, k);
  const double f = force.eval(state.t).f;
  const double a = *state.a;
  return {state.v, a, (a - f / p.mass_renormalized) / tau};
}

double ald_preacceleration(const ParticleParams& p, const Constants& k,
                           double f0, double t) {
  const double tau = tau_e(p, k);
  const double a_final = f0 / p.mass_renormalized;
  return t < 0.0 ? a_final * std::exp(t / tau) : a_final;
}

void series_rhs_internal(int order, double f_internal,
                         std::span<const double> y, std::span<double> dydt) {
  check_series_order(order);
  const auto n = static_cast<std::size_t>(order);
  if (y.size() != n || dydt.size() != n) {
    throw std::invalid_argument("series_rhs_internal: state size must equal the order");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) dydt[i] = y[i + 1];
  // x^(N) from  x'' + sum_{m=3..N} (-1)^m x^(m) = f  with tau_e = M = 1
  double partial = f_internal - y[2];
  for (int m = 3; m < order; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    partial -= sign * y[static_cast<std::size_t>(m)];
  }
  const double top_sign = (order % 2 == 0) ? 1.0 : -1.0;
  dydt[n - 1] = top_sign * partial;
}

std::array<double, 2> oscillator_rhs(const ParticleParams& p,
                                     const Constants& k, double spring_k,
                                     const ForceModel& drive, double t,
                                     double x, double v) {
  if (!(spring_k > 0.0)) {
    throw std::invalid_argument("oscillator_rhs: spring constant must be positive");
  }
  const double zeta = spring_k * tau_e(p, k);
  const double f = drive.eval(t).f;
  return {v, (f - zeta * v - spring_k * x) / p.mass_renormalized};
}

double radiated_power_fo(const ParticleParams& p, const Constants& k,
                         const ForceModel& force, double t) {
  const double f = force.eval(t).f;
  return tau_e(p, k) * f * f / p.mass_renormalized;
}

double radiated_power_larmor(const ParticleParams& p, const Constants& k,
                             double accel) {
  return tau_e(p, k) * p.mass_renormalized * accel * accel;
}

ReducedModel reduce_order(const ModelNR& model) {
  if (std::holds_alternative<ModelNR::ALD>(model.variant)) {
    return {ModelNR::fo(model.particle),
            "order reduction replaces the point charge by a charge with "
            "structure; the two models differ at order tau_e^2"};
  }
  return {model, "already first order in the force derivative; unchanged"};
}

std::complex<double> series_char_partial(int order, std::complex<double> wtau) {
  check_series_order(order);
  const std::complex<double> iw(0.0, 1.0);
  std::complex<double> acc = -wtau * wtau;
  for (int n = 3; n <= order; ++n) {
    acc += std::pow(iw * wtau, n);
  }
  return acc;
}

std::complex<double> fo_char_closed(std::complex<double> wtau) {
  const std::complex<double> one(1.0, 0.0);
  const std::complex<double> iw(0.0, 1.0);
  return -wtau * wtau / (one - iw * wtau);
}

namespace {

struct InternalForce {
  const ForceModel* force;
  double time_unit;
  double force_unit;

  ForceSample eval(double t_int) const {
    ForceSample s = force->eval(t_int * time_unit);
    s.f /= force_unit;
    s.fdot *= time_unit / force_unit;
    s.fddot *= time_unit * time_unit / force_unit;
    return s;
  }
};

} // namespace

Trajectory integrate(const ModelNR& model, const Constants& k,
                     const ForceModel& force, const StateNR& initial,
                     double t0, double t1, const IntegrateOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0)) {
    throw std::invalid_argument("integrate: need a finite span with t1 > t0");
  }
  const bool is_ald = std::holds_alternative<ModelNR::ALD>(model.variant);
  const bool is_series = std::holds_alternative<ModelNR::Series>(model.variant);
  if (is_ald && !initial.a) {
    throw std::invalid_argument("integrate: ALD initial state must carry an acceleration");
  }
  if (!is_ald && initial.a) {
    throw std::invalid_argument("integrate: acceleration state is ALD-only");
  }

  const Scales sc = Scales::internal(model.particle, k);
  const InternalForce fint{&force, sc.time_s, sc.force()};
  const double ti0 = t0 / sc.time_s;
  const double ti1 = t1 / sc.time_s;

  // assemble the internal first-order system
  std::vector<double> y0;
  int a_state_index = -1;  // acceleration carried in the state (ALD/series)
  std::size_t dim = 2;
  if (is_ald) {
    dim = 3;
    a_state_index = 2;
  } else if (is_series) {
    dim = static_cast<std::size_t>(std::get<ModelNR::Series>(model.variant).order);
    a_state_index = 2;
  }
  y0.assign(dim, 0.0);
  y0[0] = initial.x / sc.length_cm;
  y0[1] = initial.v / sc.velocity();
  if (is_ald) y0[2] = *initial.a / sc.accel();

  double k_int = 0.0;
  if (const auto* osc = std::get_if<ModelNR::Oscillator>(&model.variant)) {
    k_int = osc->spring_k / sc.spring();
  }

  ode::Rhs rhs = [&](double t, std::span<const double> y,
                     std::span<double> dydt) {
    const ForceSample s = fint.eval(t);
    struct V {
      const ForceSample& s;
      std::span<const double> y;
      std::span<double> d;
      double k_int;
      int order;
      void operator()(const ModelNR::Newton&) const {
        d[0] = y[1];
        d[1] = s.f;
      }
      void operator()(const ModelNR::FO&) const {
        d[0] = y[1];
        d[1] = s.f + s.fdot;
      }
      void operator()(const ModelNR::FOSharp&) const {
        d[0] = y[1];
        d[1] = s.f + s.fdot + 0.25 * s.fddot;
      }
      void operator()(const ModelNR::Oscillator&) const {
        d[0] = y[1];
        d[1] = s.f - k_int * (y[0] + y[1]);
      }
      void operator()(const ModelNR::ALD&) const {
        d[0] = y[1];
        d[1] = y[2];
        d[2] = y[2] - s.f;
      }
      void operator()(const ModelNR::Series&) const {
        series_rhs_internal(order, s.f, y, d);
      }
    };
    int order = is_series ? std::get<ModelNR::Series>(model.variant).order : 0;
    std::visit(V{s, y, dydt, k_int, order}, model.variant);
  };

  // per-component problem scales keep the error control relative even
  // though nonrelativistic states are tiny in internal units
  double f_max = 0.0;
  for (int i = 0; i <= 32; ++i) {
    const double tp = ti0 + (ti1 - ti0) * static_cast<double>(i) / 32.0;
    f_max = std::max(f_max, std::abs(fint.eval(tp).f));
  }
  const double span_int = ti1 - ti0;
  double a_scale = f_max;
  if (is_ald) a_scale = std::max(a_scale, std::abs(y0[2]));
  if (a_scale == 0.0) a_scale = 1e-30;
  double v_scale = std::max(std::abs(y0[1]), a_scale * span_int);
  double x_scale = std::max(std::abs(y0[0]), v_scale * span_int);
  if (k_int > 0.0) {
    const double w0 = std::sqrt(k_int);
    x_scale = std::max({std::abs(y0[0]), std::abs(y0[1]) / w0, f_max / k_int});
    v_scale = std::max(std::abs(y0[1]), w0 * x_scale);
  }

  ode::Options oopt;
  oopt.rel_tol = opt.tol;
  oopt.abs_tol = 0.0;
  oopt.y_scale.assign(dim, a_scale);
  oopt.y_scale[0] = x_scale;
  oopt.y_scale[1] = v_scale;
  oopt.breakpoints = force.breakpoints();
  for (double& b : oopt.breakpoints) b /= sc.time_s;
  if (opt.fixed_step_s) oopt.fixed_step = *opt.fixed_step_s / sc.time_s;
  if (opt.sample_dt_s) oopt.sample_dt = *opt.sample_dt_s / sc.time_s;

  bool runaway = false;
  if (a_state_index >= 0) {
    const double amp = opt.runaway_amplification;
    const double a0 = std::abs(y0[static_cast<std::size_t>(a_state_index)]);
    oopt.guard = [&, amp, a0, a_state_index](double t,
                                             std::span<const double> y) {
      const double a = std::abs(y[static_cast<std::size_t>(a_state_index)]);
      const double ref = std::max(a0, std::abs(fint.eval(t).f));
      if (ref > 0.0 && a > amp * ref) {
        runaway = true;
        return false;
      }
      return true;
    };
  }

  const ode::Result r = ode::integrate(rhs, ti0, ti1, y0, oopt);

  Trajectory traj;
  traj.n_accepted = r.n_accepted;
  traj.n_rejected = r.n_rejected;
  switch (r.status) {
    case ode::Status::Completed:
      traj.status = RunStatus::Completed;
      break;
    case ode::Status::GuardStop:
      traj.status = runaway ? RunStatus::RunawayDetected : RunStatus::Aborted;
      break;
    case ode::Status::StepUnderflow:
      traj.status = RunStatus::StepUnderflow;
      break;
    case ode::Status::MaxStepsExceeded:
      traj.status = RunStatus::Aborted;
      break;
  }
  if (traj.status == RunStatus::RunawayDetected) {
    if (auto ef = fit_efolding(r.samples, a_state_index)) {
      traj.efolding_time_s = *ef * sc.time_s;
    }
  }

  const double tau = sc.time_s;
  const double mass = model.particle.mass_renormalized;
  traj.points.reserve(r.samples.size());
  for (const auto& smp : r.samples) {
    TrajectoryPoint tp;
    tp.t = smp.t * sc.time_s;
    tp.x = smp.y[0] * sc.length_cm;
    tp.v = smp.y[1] * sc.velocity();
    double a_int;
    if (a_state_index >= 0) {
      a_int = smp.y[static_cast<std::size_t>(a_state_index)];
    } else {
      std::vector<double> d(smp.y.size());
      rhs(smp.t, smp.y, d);
      a_int = d[1];
    }
    tp.a = a_int * sc.accel();
    tp.f = force.eval(tp.t).f;
    tp.p_fo = tau * tp.f * tp.f / mass;
    tp.p_larmor = tau * mass * tp.a * tp.a;
    traj.points.push_back(tp);
  }
  return traj;
}

StateNR ald_bounded_state(const ParticleParams& p, const Constants& k,
                          const ForceModel& force, double t) {
  const double tau = tau_e(p, k);
  const double mass = p.mass_renormalized;
  StateNR st;
  st.t = t;

  if (std::holds_alternative<ForceModel::Zero>(force.variant())) {
    st.a = 0.0;
    return st;
  }
  if (const auto* c = std::get_if<ForceModel::Constant>(&force.variant())) {
    const double a = c->f0 / mass;
    st.x = 0.5 * a * t * t;
    st.v = a * t;
    st.a = a;
    return st;
  }
  if (const auto* s = std::get_if<ForceModel::SinDrive>(&force.variant())) {
    // bounded particular solution: x = Im[X e^{i(wt+phi)}],
    // X = -(F0/M) / (w^2 (1 - i w tau))
    const std::complex<double> i(0.0, 1.0);
    const double w = s->omega;
    const std::complex<double> X =
        -(s->f0 / mass) / (w * w * (1.0 - i * w * tau));
    const std::complex<double> ph = std::exp(i * (w * t + s->phase));
    st.x = std::imag(X * ph);
    st.v = std::imag(i * w * X * ph);
    st.a = -w * w * st.x;
    return st;
  }
  if (const auto* sp = std::get_if<ForceModel::Step>(&force.variant())) {
    if (sp->t_on != 0.0) {
      throw std::invalid_argument(
          "ald_bounded_state: step force must switch on at t = 0");
    }
    const double a_final = sp->f0 / mass;
    if (t < 0.0) {
      const double g = std::exp(t / tau);
      st.a = a_final * g;
      st.v = tau * a_final * g;
      st.x = tau * tau * a_final * g;
    } else {
      st.a = a_final;
      st.v = tau * a_final + a_final * t;
      st.x = tau * tau * a_final + tau * a_final * t + 0.5 * a_final * t * t;
    }
    return st;
  }
  throw std::invalid_argument(
      "ald_bounded_state: no closed form for this force variant");
}

StateNR fo_periodic_state(const ParticleParams& p, const Constants& k,
                          const ForceModel& force, double t) {
  const double tau = tau_e(p, k);
  const double mass = p.mass_renormalized;
  StateNR st;
  st.t = t;
  if (std::holds_alternative<ForceModel::Zero>(force.variant())) return st;
  if (const auto* c = std::get_if<ForceModel::Constant>(&force.variant())) {
    const double a = c->f0 / mass;
    st.x = 0.5 * a * t * t;
    st.v = a * t;
    return st;
  }
  if (const auto* s = std::get_if<ForceModel::SinDrive>(&force.variant())) {
    const std::complex<double> i(0.0, 1.0);
    const double w = s->omega;
    const std::complex<double> X =
        -(s->f0 / mass) * (1.0 + i * w * tau) / (w * w);
    const std::complex<double> ph = std::exp(i * (w * t + s->phase));
    st.x = std::imag(X * ph);
    st.v = std::imag(i * w * X * ph);
    return st;
  }
  throw std::invalid_argument(
      "fo_periodic_state: no closed form for this force variant");
}

Trajectory ald_bounded_trajectory(const ParticleParams& p, const Constants& k,
                                  const ForceModel& force, double t0,
                                  double t1, double dt) {
  if (!(dt > 0.0) || !(t1 > t0)) {
    throw std::invalid_argument("ald_bounded_trajectory: bad sampling request");
  }
  const double tau = tau_e(p, k);
  const double mass = p.mass_renormalized;
  Trajectory traj;
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / dt + 1e-9)) + 1;
  traj.points.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double t = t0 + dt * static_cast<double>(idx);
    const StateNR st = ald_bounded_state(p, k, force, t);
    TrajectoryPoint tp;
    tp.t = t;
    tp.x = st.x;
    tp.v = st.v;
    tp.a = st.a.value_or(0.0);
    tp.f = force.eval(t).f;
    tp.p_fo = tau * tp.f * tp.f / mass;
    tp.p_larmor = tau * mass * tp.a * tp.a;
    traj.points.push_back(tp);
  }
  return traj;
}

} // namespace radreact
