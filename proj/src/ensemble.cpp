#include "radreact/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "radreact/noise.hpp"

namespace radreact {

std::uint64_t member_seed(const EnsembleConfig& cfg, std::size_t index) {
  return cfg.base_seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1);
}

EnsembleStats ensemble_mean(
    const EnsembleConfig& cfg,
    const std::function<Trajectory(std::uint64_t seed)>& member,
    std::size_t n_threads) {
  if (cfg.n_members < 1) {
    throw std::invalid_argument("ensemble_mean: need at least one member");
  }

  std::vector<Trajectory> members(cfg.n_members);
  if (n_threads == 0) {
    n_threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  n_threads = std::min(n_threads, cfg.n_members);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cfg.n_members) return;
      members[i] = member(member_seed(cfg, i));
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::size_t npts = members[0].points.size();
  for (const Trajectory& m : members) {
    if (m.points.size() != npts) {
      throw std::runtime_error("ensemble_mean: members have mismatched grids");
    }
    for (std::size_t j = 0; j < npts; ++j) {
      if (m.points[j].t != members[0].points[j].t) {
        throw std::runtime_error("ensemble_mean: members have mismatched grids");
      }
    }
  }

  EnsembleStats st;
  st.n_members = cfg.n_members;
  st.t.resize(npts);
  st.mean_x.assign(npts, 0.0);
  st.mean_v.assign(npts, 0.0);
  st.stderr_x.assign(npts, 0.0);
  st.stderr_v.assign(npts, 0.0);
  for (std::size_t j = 0; j < npts; ++j) st.t[j] = members[0].points[j].t;

  // Welford accumulation over members, per time index
  std::vector<double> m2x(npts, 0.0), m2v(npts, 0.0);
  for (std::size_t i = 0; i < cfg.n_members; ++i) {
    const double n = static_cast<double>(i + 1);
    for (std::size_t j = 0; j < npts; ++j) {
      const double dx = members[i].points[j].x - st.mean_x[j];
      st.mean_x[j] += dx / n;
      m2x[j] += dx * (members[i].points[j].x - st.mean_x[j]);
      const double dv = members[i].points[j].v - st.mean_v[j];
      st.mean_v[j] += dv / n;
      m2v[j] += dv * (members[i].points[j].v - st.mean_v[j]);
    }
  }
  if (cfg.n_members > 1) {
    const double n = static_cast<double>(cfg.n_members);
    for (std::size_t j = 0; j < npts; ++j) {
      st.stderr_x[j] = std::sqrt(m2x[j] / (n - 1.0) / n);
      st.stderr_v[j] = std::sqrt(m2v[j] / (n - 1.0) / n);
    }
  }
  return st;
}

} // namespace radreact
