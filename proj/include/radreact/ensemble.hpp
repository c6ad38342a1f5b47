#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "radreact/eom_nonrel.hpp"

namespace radreact {

struct EnsembleConfig {
  std::size_t n_members = 1;
  std::uint64_t base_seed = 0;
};

//! Member seed: base_seed XOR splitmix of the member index. Pairwise
//! distinct for distinct indices.
std::uint64_t member_seed(const EnsembleConfig& cfg, std::size_t index);

//! Pointwise ensemble statistics on a shared time grid.
struct EnsembleStats {
  std::vector<double> t;
  std::vector<double> mean_x;
  std::vector<double> mean_v;
  std::vector<double> stderr_x;
  std::vector<double> stderr_v;
  std::size_t n_members = 0;
};

//! Run `member` once per seed (fanning out to a worker pool) and reduce to
//! pointwise means and standard errors. Aggregation order is by member
//! index, independent of completion order, so results do not depend on the
//! thread count. Members must share the time grid (mismatch throws).
EnsembleStats ensemble_mean(
    const EnsembleConfig& cfg,
    const std::function<Trajectory(std::uint64_t seed)>& member,
    std::size_t n_threads = 0);

} // namespace radreact
