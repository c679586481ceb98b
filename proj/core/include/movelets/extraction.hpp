#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "movelets/candidate.hpp"
#include "movelets/parallel.hpp"

namespace movelets {

enum class ExtractionVariant { no_pivots, pivots };

struct ExtractionConfig {
  ExtractionVariant variant = ExtractionVariant::no_pivots;
  bool log_limit = true;
  /// tau = best frequency quality * tau_factor; must lie in (0, 1].
  double tau_factor = 0.9;

  void validate() const;
};

/// Identity of a scored candidate, recorded in generation order.
struct CandidateKey {
  Subtrajectory slice;
  DimensionSet dims;
  double frequency = 0.0;
  /// Passed the pruning step (tau, and for pivots the overlap rule).
  bool survived = false;

  friend bool operator==(const CandidateKey&, const CandidateKey&) = default;
};

struct ExtractionResult {
  /// Quality >= tau, redundancy filtered, descending quality.
  std::vector<MoveletCandidate> best_candidates;
  /// Candidates excluded by tau (or by the pivot overlap rule), descending quality.
  std::vector<MoveletCandidate> bucket;
  /// The threshold of the single pruning step; for pivots, the size-1 threshold.
  double tau = 0.0;
  /// Pivots only: the threshold applied at each size, starting at size 1.
  std::vector<double> size_taus;
  std::size_t candidates_generated = 0;
  std::size_t duplicates_removed = 0;
  /// Every scored candidate, including redundancy-filtered duplicates.
  std::vector<CandidateKey> scored;
};

/// max(W*[k]) per dataset dimension: the largest finite distance in
/// dimension k over the class distances of every candidate in `pool`.
/// Zero for dimensions no candidate uses.
std::vector<double> frequency_scale(std::span<const MoveletCandidate> pool,
                                    std::size_t dimension_count);
void update_frequency_scale(std::vector<double>& scale, std::span<const MoveletCandidate> pool);

/// Relative frequency of the candidate in dimension `dim` over its class
/// distance table. Not-containable entries count as maximal distance.
/// Throws ParameterError when `dim` is not in the candidate's dimensions.
double relative_frequency(const MoveletCandidate& candidate, std::size_t dim,
                          std::span<const double> scale);

/// Mean relative frequency over the candidate's dimensions. Also stores the
/// value into `candidate.quality` (kind frequency, sp unset) and
/// `candidate.frequency`.
double frequency_quality(MoveletCandidate& candidate, std::span<const double> scale);

/// Removes exact duplicates (same dimensions, identical values), keeping the
/// first occurrence in the given order and counting duplicates on it.
std::vector<MoveletCandidate> redundancy_filter(const Dataset& dataset,
                                                std::vector<MoveletCandidate> candidates,
                                                std::size_t* removed = nullptr);

/// Every (slice, dimension subset) pair of sizes 1..limit for one trajectory,
/// ordered by size, start, then dimension mask. Distances are not filled.
std::vector<MoveletCandidate> enumerate_candidates(const Dataset& dataset, std::size_t source,
                                                   bool log_limit);

ExtractionResult extract_no_pivots(const Dataset& dataset, std::size_t source,
                                   std::span<const std::size_t> class_set,
                                   const NormalizationStats& stats, const ExtractionConfig& cfg,
                                   WorkerPool* pool = nullptr);

ExtractionResult extract_pivots(const Dataset& dataset, std::size_t source,
                                std::span<const std::size_t> class_set,
                                const NormalizationStats& stats, const ExtractionConfig& cfg,
                                WorkerPool* pool = nullptr);

/// Dispatches on cfg.variant.
ExtractionResult extract(const Dataset& dataset, std::size_t source,
                         std::span<const std::size_t> class_set, const NormalizationStats& stats,
                         const ExtractionConfig& cfg, WorkerPool* pool = nullptr);

/// Slices generated from a set of surviving slices by extending each one
/// point to the left and one point to the right, within [0, length).
std::vector<Subtrajectory> pivot_neighbourhood(std::span<const Subtrajectory> survivors,
                                               std::size_t length);

}  // namespace movelets
