#include "radreact/langevin.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radreact/units.hpp"

namespace radreact {

namespace {

struct RunContext {
  Scales sc;
  double dt_int;
  std::size_t n_steps;
  std::size_t n_burn;
  std::size_t stride;
};

RunContext make_context(const ParticleParams& p, const Constants& k,
                        double t0, double t1, double dt,
                        const StochasticOptions& opt) {
  if (!(dt > 0.0) || !(t1 > t0)) {
    throw std::invalid_argument("stochastic run: need dt > 0 and t1 > t0");
  }
  RunContext ctx{Scales::internal(p, k), 0.0, 0, 0, opt.record_stride};
  ctx.dt_int = dt / ctx.sc.time_s;
  ctx.n_steps = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
  if (ctx.n_steps == 0) {
    throw std::invalid_argument("stochastic run: span shorter than one step");
  }
  ctx.n_burn = static_cast<std::size_t>(
      std::ceil(std::max(0.0, opt.burn_in_s) / dt));
  return ctx;
}

void push_point(Trajectory& traj, const RunContext& ctx,
                const ParticleParams& p, double t_int, double x_int,
                double v_int, double a_int, double f_int) {
  TrajectoryPoint tp;
  tp.t = t_int * ctx.sc.time_s;
  tp.x = x_int * ctx.sc.length_cm;
  tp.v = v_int * ctx.sc.velocity();
  tp.a = a_int * ctx.sc.accel();
  tp.f = f_int * ctx.sc.force();
  tp.p_fo = ctx.sc.time_s * tp.f * tp.f / p.mass_renormalized;
  tp.p_larmor = ctx.sc.time_s * p.mass_renormalized * tp.a * tp.a;
  traj.points.push_back(tp);
}

} // namespace

StochasticRun langevin_oscillator(const ParticleParams& p, const Constants& k,
                                  double spring_k, const NoiseSpec& spec,
                                  const StateNR& initial, double t0, double t1,
                                  double dt, const StochasticOptions& opt) {
  if (!(spring_k > 0.0)) {
    throw std::invalid_argument("langevin_oscillator: K must be positive");
  }
  const double zeta_required = spring_k * tau_e(p, k);
  if (std::abs(spec.damping() - zeta_required) > 1e-9 * zeta_required) {
    throw std::invalid_argument(
        "langevin_oscillator: noise damping must equal K tau_e");
  }
  const double omega0 = std::sqrt(spring_k / p.mass_renormalized);
  if (dt * omega0 > 0.1) {
    throw std::invalid_argument(
        "langevin_oscillator: dt above stability bound (dt * omega_0 > 0.1)");
  }
  if (initial.a) {
    throw std::invalid_argument("langevin_oscillator: acceleration state is ALD-only");
  }

  const RunContext ctx = make_context(p, k, t0, t1, dt, opt);
  const double k_int = spring_k / ctx.sc.spring();
  const double zeta_int = k_int;  // zeta = K tau_e in internal units
  const double h = ctx.dt_int;
  const double f_unit = ctx.sc.force();

  NoiseStream noise(spec, k, dt);

  double x = initial.x / ctx.sc.length_cm;
  double v = initial.v / ctx.sc.velocity();
  double t = t0 / ctx.sc.time_s;

  StochasticRun run;
  run.trajectory.status = RunStatus::Completed;
  if (ctx.stride > 0) {
    run.trajectory.points.reserve(ctx.n_steps / ctx.stride + 2);
  }

  double fn = noise.next() / f_unit;
  push_point(run.trajectory, ctx, p, t, x, v,
             fn - k_int * x - zeta_int * v, fn);

  for (std::size_t i = 0; i < ctx.n_steps; ++i) {
    const double kick = h * fn;
    const double ax = -k_int * x - zeta_int * v;
    const double xp = x + h * v;
    const double vp = v + h * ax + kick;
    const double axp = -k_int * xp - zeta_int * vp;
    const double x_new = x + 0.5 * h * (v + vp);
    const double v_new = v + 0.5 * h * (ax + axp) + kick;
    x = x_new;
    v = v_new;
    t += h;
    if (i + 1 >= ctx.n_burn) {
      run.mean_x2 += x * x;
      run.mean_v2 += v * v;
      ++run.n_stat;
    }
    const bool last = (i + 1 == ctx.n_steps);
    fn = noise.next() / f_unit;
    if ((ctx.stride > 0 && (i + 1) % ctx.stride == 0) || last) {
      push_point(run.trajectory, ctx, p, t, x, v,
                 fn - k_int * x - zeta_int * v, fn);
    }
  }

  if (run.n_stat > 0) {
    const double x_unit2 = ctx.sc.length_cm * ctx.sc.length_cm;
    const double v_unit2 = ctx.sc.velocity() * ctx.sc.velocity();
    run.mean_x2 = run.mean_x2 / static_cast<double>(run.n_stat) * x_unit2;
    run.mean_v2 = run.mean_v2 / static_cast<double>(run.n_stat) * v_unit2;
  }
  run.trajectory.n_accepted = ctx.n_steps;
  return run;
}

StochasticRun free_fluctuating(const ParticleParams& p, const Constants& k,
                               const NoiseSpec& spec, const StateNR& initial,
                               double t0, double t1, double dt,
                               const ForceModel& external,
                               const StochasticOptions& opt) {
  if (initial.a) {
    throw std::invalid_argument("free_fluctuating: acceleration state is ALD-only");
  }
  const RunContext ctx = make_context(p, k, t0, t1, dt, opt);
  const double h = ctx.dt_int;
  const double f_unit = ctx.sc.force();
  const double fdot_unit = ctx.sc.force_rate();

  // effective external FO force in internal units
  auto ext_eff = [&](double t_int) {
    const ForceSample s = external.eval(t_int * ctx.sc.time_s);
    return s.f / f_unit + s.fdot / fdot_unit;
  };

  double x = initial.x / ctx.sc.length_cm;
  double v = initial.v / ctx.sc.velocity();
  double t = t0 / ctx.sc.time_s;

  StochasticRun run;
  run.trajectory.status = RunStatus::Completed;

  auto accumulate = [&](std::size_t step_done) {
    if (step_done >= ctx.n_burn) {
      run.mean_x2 += x * x;
      run.mean_v2 += v * v;
      ++run.n_stat;
    }
  };

  if (spec.is_white()) {
    // tau_e F' is dropped: white noise has no pathwise derivative, and the
    // term is O(tau_e / correlation time) anyway
    NoiseStream noise(spec, k, dt);
    double fn = noise.next() / f_unit;
    push_point(run.trajectory, ctx, p, t, x, v, fn + ext_eff(t), fn);
    for (std::size_t i = 0; i < ctx.n_steps; ++i) {
      const double g = fn + ext_eff(t);
      x += h * v;
      v += h * g;
      t += h;
      accumulate(i + 1);
      const bool last = (i + 1 == ctx.n_steps);
      fn = noise.next() / f_unit;
      if ((ctx.stride > 0 && (i + 1) % ctx.stride == 0) || last) {
        push_point(run.trajectory, ctx, p, t, x, v, fn + ext_eff(t), fn);
      }
    }
  } else {
    // correlated noise: buffer the series and take the effective force
    // F + tau_e F' with a centered-difference derivative (the sampled
    // process interpolated; second order in dt)
    const std::size_t n = ctx.n_steps + 1;
    std::vector<double> f_int(n);
    {
      NoiseStream noise(spec, k, dt);
      for (double& f : f_int) f = noise.next() / f_unit;
    }
    auto f_eff = [&](std::size_t i) {
      double fdot;
      if (i == 0) {
        fdot = (f_int[1] - f_int[0]) / h;
      } else if (i + 1 >= n) {
        fdot = (f_int[n - 1] - f_int[n - 2]) / h;
      } else {
        fdot = (f_int[i + 1] - f_int[i - 1]) / (2.0 * h);
      }
      return f_int[i] + fdot;  // tau_e = 1 internally
    };

    push_point(run.trajectory, ctx, p, t, x, v, f_eff(0) + ext_eff(t),
               f_int[0]);
    for (std::size_t i = 0; i < ctx.n_steps; ++i) {
      const double g0 = f_eff(i) + ext_eff(t);
      const double g1 = f_eff(i + 1) + ext_eff(t + h);
      const double vp = v + h * g0;
      x += 0.5 * h * (v + vp);
      v += 0.5 * h * (g0 + g1);
      t += h;
      accumulate(i + 1);
      const bool last = (i + 1 == ctx.n_steps);
      if ((ctx.stride > 0 && (i + 1) % ctx.stride == 0) || last) {
        push_point(run.trajectory, ctx, p, t, x, v, f_eff(i + 1) + ext_eff(t),
                   f_int[i + 1]);
      }
    }
  }

  if (run.n_stat > 0) {
    const double x_unit2 = ctx.sc.length_cm * ctx.sc.length_cm;
    const double v_unit2 = ctx.sc.velocity() * ctx.sc.velocity();
    run.mean_x2 = run.mean_x2 / static_cast<double>(run.n_stat) * x_unit2;
    run.mean_v2 = run.mean_v2 / static_cast<double>(run.n_stat) * v_unit2;
  }
  run.trajectory.n_accepted = ctx.n_steps;
  return run;
}

} // namespace radreact
