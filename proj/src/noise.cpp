#include "radreact/noise.hpp"

#include <stdexcept>

namespace radreact {

namespace {

void check_common(double temperature_K, double damping) {
  if (temperature_K < 0.0) {
    throw std::invalid_argument("NoiseSpec: temperature must be >= 0");
  }
  if (damping < 0.0) {
    throw std::invalid_argument("NoiseSpec: damping must be >= 0");
  }
}

} // namespace

NoiseSpec NoiseSpec::white(double temperature_K, double damping,
                           std::uint64_t seed) {
  check_common(temperature_K, damping);
  return {WhiteFDT{temperature_K, damping}, seed};
}

NoiseSpec NoiseSpec::exp_correlated(double temperature_K, double damping,
                                    std::optional<double> tau_c_s,
                                    std::uint64_t seed, const Constants& k) {
  check_common(temperature_K, damping);
  double tc;
  if (tau_c_s) {
    tc = *tau_c_s;
  } else {
    if (!(temperature_K > 0.0)) {
      throw std::invalid_argument(
          "NoiseSpec: default correlation time needs T > 0");
    }
    tc = default_correlation_time(temperature_K, k);
  }
  if (!(tc > 0.0)) {
    throw std::invalid_argument("NoiseSpec: correlation time must be positive");
  }
  return {ExpCorrelated{temperature_K, damping, tc}, seed};
}

double NoiseSpec::temperature() const {
  return std::visit([](const auto& v) { return v.temperature_K; }, variant);
}

double NoiseSpec::damping() const {
  return std::visit([](const auto& v) { return v.damping; }, variant);
}

double default_correlation_time(double temperature_K, const Constants& k) {
  if (!(temperature_K > 0.0)) {
    throw std::invalid_argument("default_correlation_time: T must be positive");
  }
  constexpr double two_pi = 6.283185307179586;
  return k.hbar / (two_pi * k.kB * temperature_K);
}

NoiseStream::NoiseStream(const NoiseSpec& spec, const Constants& k,
                         double dt_s)
    : rng_(spec.seed) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("NoiseStream: dt must be positive");
  }
  const double kT = k.kB * spec.temperature();
  const double zeta = spec.damping();
  silent_ = (kT == 0.0 || zeta == 0.0);  // classical noise vanishes at T = 0
  white_ = spec.is_white();
  if (silent_) return;
  if (white_) {
    sigma_ = std::sqrt(2.0 * zeta * kT / dt_s);
  } else {
    const auto& c = std::get<NoiseSpec::ExpCorrelated>(spec.variant);
    sigma_ = std::sqrt(kT * zeta / c.tau_c_s);  // stationary std
    rho_ = std::exp(-dt_s / c.tau_c_s);
    qs_ = sigma_ * std::sqrt(1.0 - rho_ * rho_);
  }
}

double NoiseStream::next() {
  if (silent_) return 0.0;
  if (white_) return sigma_ * rng_.normal();
  if (!started_) {
    started_ = true;
    state_ = sigma_ * rng_.normal();  // stationary start
    return state_;
  }
  state_ = rho_ * state_ + qs_ * rng_.normal();
  return state_;
}

std::vector<double> sample_noise(const NoiseSpec& spec, const Constants& k,
                                 double dt_s, std::size_t n_steps) {
  NoiseStream stream(spec, k, dt_s);
  std::vector<double> out(n_steps);
  for (double& f : out) f = stream.next();
  return out;
}

} // namespace radreact
