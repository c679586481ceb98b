#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "movelets/dimension_set.hpp"
#include "movelets/trajectory.hpp"

namespace movelets {

inline constexpr double kNotContainable = std::numeric_limits<double>::infinity();

/// Spatial: planar Euclidean. Numeric: absolute difference.
/// Categorical: 0 when the symbols match, 1 otherwise.
inline double point_distance(const Value& a, const Value& b, DimensionKind kind) noexcept {
  switch (kind) {
    case DimensionKind::spatial: {
      const double dx = a.x - b.x;
      const double dy = a.y - b.y;
      return std::sqrt(dx * dx + dy * dy);
    }
    case DimensionKind::numeric: return a.x > b.x ? a.x - b.x : b.x - a.x;
    case DimensionKind::categorical: return a.x == b.x ? 0.0 : 1.0;
  }
  return 0.0;
}

inline double point_distance(Point a, Point b, const DimensionDescriptor& dim) {
  return point_distance(a[dim.index], b[dim.index], dim.kind);
}

/// Per-dimension distances of a best alignment, one entry per member of the
/// candidate's DimensionSet in increasing dimension order. When the target is
/// shorter than the slice every entry is kNotContainable.
struct DistanceVector {
  std::vector<double> values;
  std::size_t alignment_offset = 0;

  static DistanceVector not_containable(std::size_t width) {
    return {std::vector<double>(width, kNotContainable), 0};
  }
  bool containable() const noexcept { return values.empty() || values.front() != kNotContainable; }
  bool all_zero() const noexcept {
    for (double v : values) {
      if (v != 0.0) return false;
    }
    return containable();
  }

  friend bool operator==(const DistanceVector&, const DistanceVector&) = default;
};

struct NormalizationStats {
  /// Indexed by dataset dimension; strictly positive.
  std::vector<double> max_point_distance;

  /// Sum over the members of `dims` of value / max_point_distance. Returns
  /// kNotContainable when any value is kNotContainable.
  double aggregate(std::span<const double> values, DimensionSet dims) const;
  double aggregate(const DistanceVector& v, DimensionSet dims) const {
    return aggregate(v.values, dims);
  }
};

/// Per-dimension maximum point distance over all point pairs of the dataset.
/// Numeric and categorical maxima are exact for any size. Spatial maxima use
/// all pairs up to 10^6 pairs and a seeded sample of 10^6 pairs beyond that.
/// Constant dimensions map to 1.0.
NormalizationStats compute_stats(const Dataset& dataset, std::uint64_t seed = 0);

/// Uniform stats of 1.0 per dimension.
NormalizationStats unit_stats(std::size_t dimension_count);

/// Distance sums of a slice at every offset of a target, for a chosen set of
/// dimensions. Shared by every DimensionSet of the same slice so that each
/// subset only pays for the offset scan.
class AlignmentProfile {
 public:
  AlignmentProfile(const Trajectory& source, Subtrajectory slice, const Trajectory& target,
                   std::span<const DimensionDescriptor> dimensions, DimensionSet which);

  std::size_t offsets() const noexcept { return offsets_; }
  bool containable() const noexcept { return offsets_ > 0; }
  double sum(std::size_t offset, std::size_t dim) const noexcept {
    return sums_[offset * width_ + dim];
  }

  /// Offset minimising the aggregated normalized score over `dims`, ties
  /// toward the smallest offset. `dims` must be a subset of `which`.
  DistanceVector best(DimensionSet dims, const NormalizationStats& stats) const;

 private:
  std::size_t offsets_ = 0;
  std::size_t width_ = 0;  // dataset dimension count
  std::vector<double> sums_;
};

/// Best alignment of source[slice] against every window of target over `dims`.
DistanceVector best_alignment(const Trajectory& source, Subtrajectory slice,
                              const Trajectory& target,
                              std::span<const DimensionDescriptor> dimensions, DimensionSet dims,
                              const NormalizationStats& stats);

}  // namespace movelets
