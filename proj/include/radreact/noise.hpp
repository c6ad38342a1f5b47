#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "radreact/constants.hpp"

namespace radreact {

//! SplitMix64 scramble; used to derive pairwise-distinct member seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d4db3d33133c39ULL;
  return x ^ (x >> 31);
}

//! Deterministic Gaussian generator (Marsaglia polar on mt19937_64).
//! Hand-rolled so sampled trajectories are bit-identical for a given seed,
//! independent of the standard library's distribution internals.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // (0, 1)
    const std::uint64_t r = gen_();
    return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

//! Classical fluctuating-force specification.
//!
//! The noise amplitude follows the classical Ohmic fluctuation-dissipation
//! relation <F(t)F(t')> = 2 zeta kB T delta(t-t'), the unique choice
//! consistent with equipartition for the damped oscillator. At T = 0 the
//! classical amplitude is identically zero.
struct NoiseSpec {
  struct WhiteFDT {
    double temperature_K;
    double damping;  //!< zeta [g/s]
  };
  //! Stationary Gauss-Markov process with autocorrelation
  //! (kB T zeta / tau_c) e^{-|t-t'|/tau_c}; reduces to WhiteFDT as
  //! tau_c -> 0.
  struct ExpCorrelated {
    double temperature_K;
    double damping;   //!< zeta [g/s]
    double tau_c_s;   //!< correlation time [s]
  };
  using Variant = std::variant<WhiteFDT, ExpCorrelated>;

  Variant variant;
  std::uint64_t seed = 0;

  static NoiseSpec white(double temperature_K, double damping,
                         std::uint64_t seed);
  //! tau_c defaults to the heat-bath correlation time hbar/(2 pi kB T).
  static NoiseSpec exp_correlated(double temperature_K, double damping,
                                  std::optional<double> tau_c_s,
                                  std::uint64_t seed, const Constants& k);

  double temperature() const;
  double damping() const;
  bool is_white() const { return std::holds_alternative<WhiteFDT>(variant); }
};

//! Heat-bath correlation time hbar/(2 pi kB T) [s]; about 4e-15 s at 300 K.
double default_correlation_time(double temperature_K, const Constants& k);

//! Streaming generator for the fluctuating force on a uniform grid spaced
//! dt apart. White noise: independent Gaussians of variance
//! 2 zeta kB T / dt per step. Correlated noise: exact stationary
//! Ornstein-Uhlenbeck update. T = 0 gives the identically zero stream.
class NoiseStream {
 public:
  NoiseStream(const NoiseSpec& spec, const Constants& k, double dt_s);

  //! Next force sample [dyn]; successive calls walk the grid.
  double next();

 private:
  GaussianRng rng_;
  bool white_ = true;
  bool silent_ = false;  // zero amplitude (T = 0 or zeta = 0)
  double sigma_ = 0.0;   // white: per-step std; correlated: stationary std
  double rho_ = 0.0;
  double qs_ = 0.0;
  double state_ = 0.0;
  bool started_ = false;
};

//! Realize n_steps of the fluctuating force as a vector [dyn]; identical
//! values to driving NoiseStream::next() n_steps times.
std::vector<double> sample_noise(const NoiseSpec& spec, const Constants& k,
                                 double dt_s, std::size_t n_steps);

} // namespace radreact
