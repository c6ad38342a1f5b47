#include "radreact/eom_rel.hpp"

#include <cmath>
#include <stdexcept>

#include "radreact/ode.hpp"
#include "radreact/units.hpp"

namespace radreact {

namespace {

// internal field tensor: E,B scaled by q tau_e / (M c), charge sign absorbed
FieldTensor internal_tensor(const ParticleParams& p, const Constants& k,
                            const FieldTensor& F) {
  const double s = p.charge * tau_e(p, k) / (p.mass_renormalized * k.c);
  return {F.E * s, F.B * s};
}

// du/dtau in internal units (c = M = tau_e = 1), fields premultiplied by q
FourVector accel_internal(const FieldTensor& Fi, const FieldTensor* dFi,
                          const FourVector& u, bool include_radiation,
                          RelModel model) {
  const FourVector w = Fi.mixed_apply(u);
  if (!include_radiation) return w;
  if (model == RelModel::LLType) {
    // field-only factorization: w + F'u + F(Fu) + (w.w) u
    FourVector g = Fi.mixed_apply(w);
    if (dFi) g = g + dFi->mixed_apply(u);
    const double ww = minkowski_dot(w, w);
    return w + g + u * ww;
  }
  // structured form: close fdot with the zeroth-order acceleration a0 = w
  FourVector fdot = Fi.mixed_apply(w);
  if (dFi) fdot = fdot + dFi->mixed_apply(u);
  const double ufd = minkowski_dot(u, fdot);
  const FourVector g = fdot - u * ufd;  // projector, c = 1
  return w + g;
}

void check_normalized(const FourVector& u, double c) {
  const double drift = std::abs(minkowski_dot(u, u) - c * c) / (c * c);
  if (drift > 1e-9) {
    throw std::invalid_argument("four-velocity not normalized: u.u != c^2");
  }
}

} // namespace

FourVector lorentz_four_force(const ParticleParams& p, const Constants& k,
                              const FieldTensor& F, const FourVector& u) {
  check_normalized(u, k.c);
  return F.mixed_apply(u) * (p.charge / k.c);
}

FourVector project_g(const FourVector& fdot, const FourVector& u, double c) {
  const double ufd = minkowski_dot(u, fdot);
  return fdot - u * (ufd / (c * c));
}

FourVector rel_fo_accel(const ParticleParams& p, const Constants& k,
                        const FieldTensor& F, const FieldTensor* dF_dtau,
                        const FourVector& u, bool include_radiation) {
  check_normalized(u, k.c);
  const double mass = p.mass_renormalized;
  const FourVector f = lorentz_four_force(p, k, F, u);
  if (!include_radiation) return f * (1.0 / mass);

  const FourVector a0 = f * (1.0 / mass);
  FourVector fdot = F.mixed_apply(a0) * (p.charge / k.c);
  if (dF_dtau) fdot = fdot + dF_dtau->mixed_apply(u) * (p.charge / k.c);
  const FourVector g = project_g(fdot, u, k.c);
  const double tau = tau_e(p, k);
  return (f + g * tau) * (1.0 / mass);
}

FourVector ll_type_accel(const ParticleParams& p, const Constants& k,
                         const FieldTensor& F, const FieldTensor* dF_dtau,
                         const FourVector& u) {
  check_normalized(u, k.c);
  const double mass = p.mass_renormalized;
  const double q = p.charge;
  const double c = k.c;
  const double tau = tau_e(p, k);
  const FourVector w = F.mixed_apply(u);
  FourVector g = F.mixed_apply(w) * (q * q / (mass * c * c));
  if (dF_dtau) g = g + dF_dtau->mixed_apply(u) * (q / c);
  const double ww = minkowski_dot(w, w);
  g = g + u * (q * q * ww / (mass * c * c * c * c));
  return (w * (q / c) + g * tau) * (1.0 / mass);
}

Vec3 threevector_rhs(const ParticleParams& p, const Constants& k,
                     const Vec3& E, const Vec3& B, const Vec3& v,
                     bool include_radiation) {
  const double c = k.c;
  const double beta2 = v.dot(v) / (c * c);
  if (beta2 >= 1.0) {
    throw std::domain_error("threevector_rhs: |v| >= c");
  }
  const double gamma = 1.0 / std::sqrt(1.0 - beta2);
  const double mass = p.mass_renormalized;
  const double q = p.charge;

  const Vec3 F_L = (E + v.cross(B) / c) * q;  // Gaussian (v/c) x B
  if (!include_radiation) return F_L / mass;

  // zeroth-order acceleration dv/dt from M d(gamma v)/dt = F
  const Vec3 a0 = (F_L - v * (F_L.dot(v) / (c * c))) / (gamma * mass);
  // static uniform fields: the force changes along the trajectory only
  // through v
  const Vec3 dF_dt = a0.cross(B) * (q / c);
  const Vec3 rad =
      dF_dt * gamma - a0.cross(v.cross(F_L)) * (gamma * gamma * gamma / (c * c));
  const double tau = tau_e(p, k);
  return (F_L + rad * tau) / mass;
}

Worldline integrate_proper_time(const ParticleParams& p, const Constants& k,
                                const FieldTensor& F, const FourState& initial,
                                double tau0, double tau1,
                                const RelIntegrateOptions& opt) {
  check_normalized(initial.u, k.c);
  const Scales sc = Scales::internal(p, k);
  const FieldTensor Fi = internal_tensor(p, k, F);

  std::array<double, 8> y0{};
  for (int i = 0; i < 4; ++i) y0[static_cast<std::size_t>(i)] = initial.x[i] / sc.length_cm;
  for (int i = 0; i < 4; ++i) y0[static_cast<std::size_t>(i) + 4] = initial.u[i] / k.c;

  ode::Rhs rhs = [&](double, std::span<const double> y, std::span<double> d) {
    FourVector u{{y[4], y[5], y[6], y[7]}};
    const FourVector a =
        accel_internal(Fi, nullptr, u, opt.include_radiation, opt.model);
    d[0] = y[4];
    d[1] = y[5];
    d[2] = y[6];
    d[3] = y[7];
    d[4] = a[0];
    d[5] = a[1];
    d[6] = a[2];
    d[7] = a[3];
  };

  Worldline wl;
  bool drift_abort = false;
  ode::Options oopt;
  oopt.rel_tol = opt.tol;
  oopt.abs_tol = 0.0;
  {
    const double gamma0 = y0[4];
    const double span_int = (tau1 - tau0) / sc.time_s;
    oopt.y_scale.assign(8, gamma0);
    for (std::size_t i = 0; i < 4; ++i) {
      oopt.y_scale[i] = std::max(std::abs(y0[i]), gamma0 * span_int);
    }
  }
  if (opt.sample_dt) oopt.sample_dt = *opt.sample_dt / sc.time_s;
  oopt.guard = [&](double, std::span<const double> y) {
    FourVector u{{y[4], y[5], y[6], y[7]}};
    const double drift = std::abs(minkowski_dot(u, u) - 1.0);
    wl.max_norm_drift = std::max(wl.max_norm_drift, drift);
    if (drift > opt.drift_abort) {
      drift_abort = true;
      return false;
    }
    return true;
  };

  const ode::Result r = ode::integrate(rhs, tau0 / sc.time_s, tau1 / sc.time_s,
                                       std::span<const double>(y0), oopt);
  wl.n_accepted = r.n_accepted;
  wl.n_rejected = r.n_rejected;
  switch (r.status) {
    case ode::Status::Completed:
      wl.status = RunStatus::Completed;
      break;
    case ode::Status::GuardStop:
      wl.status = drift_abort ? RunStatus::Aborted : RunStatus::Completed;
      break;
    case ode::Status::StepUnderflow:
      wl.status = RunStatus::StepUnderflow;
      break;
    case ode::Status::MaxStepsExceeded:
      wl.status = RunStatus::Aborted;
      break;
  }

  wl.points.reserve(r.samples.size());
  for (const auto& s : r.samples) {
    WorldlinePoint pt;
    pt.tau = s.t * sc.time_s;
    pt.t = s.y[0] * sc.time_s;  // x^0/c in internal units is t/tau_e
    pt.pos = {s.y[1] * sc.length_cm, s.y[2] * sc.length_cm,
              s.y[3] * sc.length_cm};
    pt.u_spatial = {s.y[5] * k.c, s.y[6] * k.c, s.y[7] * k.c};
    pt.gamma = s.y[4];
    FourVector u{{s.y[4], s.y[5], s.y[6], s.y[7]}};
    pt.norm_drift = std::abs(minkowski_dot(u, u) - 1.0);
    wl.points.push_back(pt);
  }
  return wl;
}

Worldline integrate_lab_time(const ParticleParams& p, const Constants& k,
                             const Vec3& E, const Vec3& B, const Vec3& x0,
                             const Vec3& v0, double t0, double t1,
                             const RelIntegrateOptions& opt) {
  if (v0.dot(v0) >= k.c * k.c) {
    throw std::domain_error("integrate_lab_time: |v| >= c");
  }
  const Scales sc = Scales::internal(p, k);
  const FieldTensor Fi = internal_tensor(p, k, {E, B});

  // state: (x^, p^ = gamma v / c, tau^)
  std::array<double, 7> y0{};
  {
    const double beta2 = v0.dot(v0) / (k.c * k.c);
    const double gamma = 1.0 / std::sqrt(1.0 - beta2);
    y0[0] = x0.x / sc.length_cm;
    y0[1] = x0.y / sc.length_cm;
    y0[2] = x0.z / sc.length_cm;
    y0[3] = gamma * v0.x / k.c;
    y0[4] = gamma * v0.y / k.c;
    y0[5] = gamma * v0.z / k.c;
    y0[6] = t0 / sc.time_s;  // tau offset conventionally equal to t0
  }

  ode::Rhs rhs = [&](double, std::span<const double> y, std::span<double> d) {
    const Vec3 ph{y[3], y[4], y[5]};
    const double gamma = std::sqrt(1.0 + ph.dot(ph));
    const Vec3 vh = ph / gamma;
    const Vec3 FL = Fi.E + vh.cross(Fi.B);
    Vec3 dp = FL;
    if (opt.include_radiation) {
      const Vec3 a0 = (FL - vh * FL.dot(vh)) / gamma;
      const Vec3 dF = a0.cross(Fi.B);
      dp = dp + dF * gamma - a0.cross(vh.cross(FL)) * (gamma * gamma * gamma);
    }
    d[0] = vh.x;
    d[1] = vh.y;
    d[2] = vh.z;
    d[3] = dp.x;
    d[4] = dp.y;
    d[5] = dp.z;
    d[6] = 1.0 / gamma;
  };

  ode::Options oopt;
  oopt.rel_tol = opt.tol;
  oopt.abs_tol = 0.0;
  {
    const double span_int = (t1 - t0) / sc.time_s;
    const double f_scale = Fi.E.norm() + Fi.B.norm();
    const Vec3 p0{y0[3], y0[4], y0[5]};
    const double p_scale =
        std::max({p0.norm(), f_scale * span_int, 1e-30});
    oopt.y_scale.assign(7, p_scale);
    for (std::size_t i = 0; i < 3; ++i) {
      oopt.y_scale[i] = std::max(std::abs(y0[i]), span_int);
    }
    oopt.y_scale[6] = span_int;
  }
  if (opt.sample_dt) oopt.sample_dt = *opt.sample_dt / sc.time_s;

  const ode::Result r = ode::integrate(rhs, t0 / sc.time_s, t1 / sc.time_s,
                                       std::span<const double>(y0), oopt);

  Worldline wl;
  wl.n_accepted = r.n_accepted;
  wl.n_rejected = r.n_rejected;
  wl.status = r.status == ode::Status::Completed ? RunStatus::Completed
              : r.status == ode::Status::StepUnderflow
                  ? RunStatus::StepUnderflow
                  : RunStatus::Aborted;
  wl.points.reserve(r.samples.size());
  for (const auto& s : r.samples) {
    const Vec3 ph{s.y[3], s.y[4], s.y[5]};
    const double gamma = std::sqrt(1.0 + ph.dot(ph));
    WorldlinePoint pt;
    pt.t = s.t * sc.time_s;
    pt.tau = s.y[6] * sc.time_s;
    pt.pos = {s.y[0] * sc.length_cm, s.y[1] * sc.length_cm,
              s.y[2] * sc.length_cm};
    pt.u_spatial = ph * k.c;
    pt.gamma = gamma;
    pt.norm_drift = 0.0;  // the lab form is on the mass shell by construction
    wl.points.push_back(pt);
  }
  return wl;
}

LLTypeModel reduce_order_relativistic() { return LLTypeModel{}; }

} // namespace radreact
