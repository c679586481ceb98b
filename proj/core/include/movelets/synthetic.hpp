#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "movelets/trajectory.hpp"

namespace movelets {

struct PlantedOptions {
  /// Extra noise dimensions appended after the categorical `poi` column.
  std::size_t extra_spatial = 0;
  std::size_t extra_numeric = 0;
};

/// Builds a dataset with one categorical dimension `poi`. Every trajectory
/// of class c carries the class's planted pattern (symbols `c<c>_p<j>`) at a
/// random offset; the remaining points are drawn uniformly from the noise
/// symbols `n<0..noise_vocab-1>`, which never overlap pattern symbols.
Dataset generate_planted_dataset(std::size_t n_classes, std::size_t trajs_per_class,
                                 std::size_t traj_len, std::size_t pattern_len,
                                 std::size_t noise_vocab, std::uint64_t seed,
                                 const PlantedOptions& options = {});

/// Symbol names of the pattern planted into class `class_index`.
std::vector<std::string> planted_pattern(std::size_t class_index, std::size_t pattern_len);

struct RandomDatasetOptions {
  std::size_t n_classes = 2;
  std::size_t trajs_per_class = 5;
  std::size_t min_len = 3;
  std::size_t max_len = 10;
  std::vector<DimensionKind> kinds{DimensionKind::categorical};
  std::size_t vocab = 4;            // categorical symbols per dimension
  std::int32_t numeric_levels = 5;  // numeric and spatial coordinates are integers in [0, levels)
};

/// Unstructured random dataset; used for property tests and benchmarks.
Dataset generate_random_dataset(const RandomDatasetOptions& options, std::uint64_t seed);

struct HoldoutSplit {
  Dataset train;
  Dataset test;
};

/// Class-stratified hold-out split. Each class contributes
/// round(train_fraction * size) trajectories to train (at least one).
HoldoutSplit stratified_split(const Dataset& dataset, double train_fraction, std::uint64_t seed);

}  // namespace movelets
