#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "movelets/dimension_set.hpp"
#include "movelets/distance.hpp"
#include "movelets/trajectory.hpp"

namespace movelets {

class WorkerPool;

/// Best-alignment distances of one candidate against a list of target
/// trajectories, stored flat: row r holds |C| values for targets[r].
class DistanceTable {
 public:
  DistanceTable() = default;
  DistanceTable(std::vector<std::size_t> targets, std::size_t width)
      : targets_(std::move(targets)), width_(width),
        values_(targets_.size() * width, 0.0), offsets_(targets_.size(), 0) {}

  std::size_t rows() const noexcept { return targets_.size(); }
  std::size_t width() const noexcept { return width_; }
  bool empty() const noexcept { return targets_.empty(); }
  std::size_t target(std::size_t r) const { return targets_[r]; }
  const std::vector<std::size_t>& targets() const noexcept { return targets_; }

  std::span<const double> row(std::size_t r) const { return {values_.data() + r * width_, width_}; }
  std::size_t offset(std::size_t r) const { return offsets_[r]; }
  bool containable(std::size_t r) const { return width_ == 0 || values_[r * width_] != kNotContainable; }
  bool all_zero(std::size_t r) const {
    for (double v : row(r)) {
      if (v != 0.0) return false;
    }
    return true;
  }

  void set(std::size_t r, const DistanceVector& v) {
    std::copy(v.values.begin(), v.values.end(), values_.begin() + static_cast<std::ptrdiff_t>(r * width_));
    offsets_[r] = static_cast<std::uint32_t>(v.alignment_offset);
  }
  DistanceVector vector(std::size_t r) const {
    auto values = row(r);
    return {{values.begin(), values.end()}, offsets_[r]};
  }

  /// Row index of a dataset trajectory, if it is one of the targets.
  std::optional<std::size_t> find(std::size_t trajectory_index) const;

 private:
  std::vector<std::size_t> targets_;
  std::size_t width_ = 0;
  std::vector<double> values_;
  std::vector<std::uint32_t> offsets_;
};

enum class QualityKind { frequency, fscore };

/// The quality record L: a score plus, for F-Score qualities, the split
/// thresholds sp (one per member of C).
struct QualityRecord {
  double value = 0.0;
  QualityKind kind = QualityKind::frequency;
  std::optional<std::vector<double>> split_points;
};

struct MoveletCandidate {
  std::size_t source = 0;  // index of T_i in the dataset
  Subtrajectory slice;
  DimensionSet dims;

  /// Distances to the trajectories of the source's class (W).
  DistanceTable class_distances;
  /// Distances to every dataset trajectory; filled during discovery.
  DistanceTable dataset_distances;
  QualityRecord quality;
  /// Frequency quality, kept after the record switches to F-Score.
  double frequency = 0.0;
  /// 1 + number of exact duplicates folded into this candidate.
  std::size_t occurrences = 1;
  /// Class trajectories matched with zero distance in every dimension of C.
  std::vector<std::size_t> covered;
};

/// True when both candidates use the same dimensions and carry identical
/// point values over them (positions are ignored).
bool same_values(const Dataset& dataset, const MoveletCandidate& a, const MoveletCandidate& b);

/// Fills `table` with best alignments of each candidate against `targets`.
/// Candidates sharing a slice share one alignment profile per target.
void compute_distances(const Dataset& dataset, std::span<MoveletCandidate> candidates,
                       std::span<const std::size_t> targets, const NormalizationStats& stats,
                       DistanceTable MoveletCandidate::*table, WorkerPool* pool = nullptr);

}  // namespace movelets
