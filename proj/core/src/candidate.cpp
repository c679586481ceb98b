#include "movelets/candidate.hpp"

#include <map>
#include <tuple>

#include "movelets/parallel.hpp"

namespace movelets {

std::optional<std::size_t> DistanceTable::find(std::size_t trajectory_index) const {
  if (trajectory_index < targets_.size() && targets_[trajectory_index] == trajectory_index) {
    return trajectory_index;
  }
  for (std::size_t r = 0; r < targets_.size(); ++r) {
    if (targets_[r] == trajectory_index) return r;
  }
  return std::nullopt;
}

bool same_values(const Dataset& dataset, const MoveletCandidate& a, const MoveletCandidate& b) {
  if (a.dims != b.dims || a.slice.length != b.slice.length) return false;
  const auto& ta = dataset.trajectory(a.source);
  const auto& tb = dataset.trajectory(b.source);
  const auto members = a.dims.indices();
  for (std::size_t j = 0; j < a.slice.length; ++j) {
    for (auto k : members) {
      if (!(ta.value(a.slice.start + j, k) == tb.value(b.slice.start + j, k))) return false;
    }
  }
  return true;
}

void compute_distances(const Dataset& dataset, std::span<MoveletCandidate> candidates,
                       std::span<const std::size_t> targets, const NormalizationStats& stats,
                       DistanceTable MoveletCandidate::*table, WorkerPool* pool) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<std::size_t>> by_slice;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    by_slice[{c.source, c.slice.start, c.slice.length}].push_back(i);
  }
  std::vector<const std::vector<std::size_t>*> groups;
  groups.reserve(by_slice.size());
  for (const auto& [key, members] : by_slice) groups.push_back(&members);

  const std::vector<std::size_t> target_list(targets.begin(), targets.end());
  for (auto& c : candidates) c.*table = DistanceTable(target_list, c.dims.size());

  const auto& dims = dataset.dimensions();
  auto work = [&](std::size_t g) {
    const auto& members = *groups[g];
    const auto& first = candidates[members.front()];
    std::uint32_t which = 0;
    for (auto i : members) which |= candidates[i].dims.mask();
    const auto& source = dataset.trajectory(first.source);
    for (std::size_t r = 0; r < target_list.size(); ++r) {
      const AlignmentProfile profile(source, first.slice, dataset.trajectory(target_list[r]), dims,
                                     DimensionSet(which));
      for (auto i : members) (candidates[i].*table).set(r, profile.best(candidates[i].dims, stats));
    }
  };
  if (pool != nullptr) {
    pool->parallel_for(groups.size(), work);
  } else {
    for (std::size_t g = 0; g < groups.size(); ++g) work(g);
  }
}

}  // namespace movelets
