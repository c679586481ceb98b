#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "movelets/candidate.hpp"
#include "movelets/parallel.hpp"

namespace movelets {

struct Movelet {
  /// quality.kind == fscore; quality.split_points holds sp.
  MoveletCandidate candidate;
  std::vector<double> split_points;
  double fscore = 0.0;
  double margin = 0.0;
  /// Dataset trajectories whose distances are <= sp in every dimension.
  std::vector<std::size_t> covered_dataset;

  const Subtrajectory& slice() const noexcept { return candidate.slice; }
  DimensionSet dims() const noexcept { return candidate.dims; }
  std::size_t source() const noexcept { return candidate.source; }
};

struct SplitResult {
  std::vector<double> split_points;
  double fscore = 0.0;
  /// Number of trajectories inside the chosen prefix.
  std::size_t prefix_size = 0;
  /// Gap between the last aggregated distance inside the prefix and the
  /// first one outside it; infinite when nothing outside can align.
  double margin = 0.0;
};

/// Sorts every dataset trajectory by aggregated normalized distance and
/// sweeps threshold prefixes, scoring each as "prefix = predicted class of
/// the source". Boundaries sit between distinct finite distances so tied
/// trajectories fall on the same side. Ties in F1 prefer the smaller prefix.
/// `candidate.dataset_distances` must hold one row per dataset trajectory.
SplitResult fscore_quality(const MoveletCandidate& candidate, const Dataset& dataset,
                           const NormalizationStats& stats);

/// F1 of predicting every trajectory as the class of `source`; any
/// candidate at or below this value does not separate its class.
double prevalence_floor(const Dataset& dataset, std::size_t source);

/// One discovery attempt over a batch of candidates.
struct DiscoveryStep {
  /// 0 for the tau-surviving candidates, s >= 1 for the s-th bucket slice.
  std::size_t slice = 0;
  std::size_t candidates_in = 0;
  std::size_t candidates_scored = 0;
  std::size_t movelets_found = 0;
};

struct DiscoveryResult {
  std::vector<Movelet> movelets;
  std::vector<DiscoveryStep> trace;
  std::size_t candidates_scored = 0;
  bool used_bucket = false;
};

/// Scores a batch with F-Score and keeps the best non-overlapping ones.
/// Drops every candidate that does not beat the prevalence floor and, when
/// `deduplicate` is set, exact duplicates first. Selection order: fscore
/// desc, wider margin, longer slice, smaller start, then batch order.
std::vector<Movelet> select_movelets(const Dataset& dataset, std::vector<MoveletCandidate> batch,
                                     const NormalizationStats& stats, WorkerPool* pool = nullptr,
                                     std::size_t* scored = nullptr, bool deduplicate = true);

/// Discovery for one source trajectory, recovering from the bucket in
/// slices of ceil(|bucket| / 10) when the best candidates yield nothing.
DiscoveryResult discover_movelets(const Dataset& dataset, std::vector<MoveletCandidate> best,
                                  std::vector<MoveletCandidate> bucket,
                                  const NormalizationStats& stats, WorkerPool* pool = nullptr);

/// Class trajectories matched by the movelet with zero distance in every
/// dimension.
std::vector<std::size_t> covered_by_movelet(const Movelet& movelet,
                                            std::span<const std::size_t> class_set);

/// Trajectories covered by a strict majority of the movelets.
std::vector<std::size_t> covered_trajectories(std::span<const Movelet> movelets,
                                              std::span<const std::size_t> class_set);

}  // namespace movelets
