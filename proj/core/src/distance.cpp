#include "movelets/distance.hpp"

#include <algorithm>
#include <random>

#include "movelets/error.hpp"

namespace movelets {

namespace {

constexpr std::uint64_t kMaxPairs = 1'000'000;

double spatial_diameter(const std::vector<Value>& pts, std::uint64_t seed) {
  const std::uint64_t n = pts.size();
  double best = 0.0;
  if (n * (n - 1) / 2 <= kMaxPairs) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        best = std::max(best, point_distance(pts[i], pts[j], DimensionKind::spatial));
      }
    }
    return best;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (std::uint64_t s = 0; s < kMaxPairs; ++s) {
    const auto i = pick(rng);
    const auto j = pick(rng);
    best = std::max(best, point_distance(pts[i], pts[j], DimensionKind::spatial));
  }
  return best;
}

}  // namespace

double NormalizationStats::aggregate(std::span<const double> values, DimensionSet dims) const {
  double total = 0.0;
  std::size_t r = 0;
  for (std::uint32_t m = dims.mask(); m != 0; m &= m - 1, ++r) {
    const double v = values[r];
    if (v == kNotContainable) return kNotContainable;
    total += v / max_point_distance[static_cast<std::size_t>(std::countr_zero(m))];
  }
  return total;
}

NormalizationStats compute_stats(const Dataset& dataset, std::uint64_t seed) {
  NormalizationStats stats;
  stats.max_point_distance.assign(dataset.dimension_count(), 1.0);
  for (const auto& dim : dataset.dimensions()) {
    std::vector<Value> pts;
    for (const auto& t : dataset.trajectories()) {
      for (std::size_t i = 0; i < t.size(); ++i) pts.push_back(t.value(i, dim.index));
    }
    if (pts.empty()) continue;
    double max_distance = 0.0;
    switch (dim.kind) {
      case DimensionKind::categorical: {
        const bool varied = std::any_of(pts.begin(), pts.end(),
                                        [&](const Value& v) { return v.x != pts.front().x; });
        max_distance = varied ? 1.0 : 0.0;
        break;
      }
      case DimensionKind::numeric: {
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                            [](const Value& a, const Value& b) { return a.x < b.x; });
        max_distance = hi->x - lo->x;
        break;
      }
      case DimensionKind::spatial: {
        std::sort(pts.begin(), pts.end(),
                  [](const Value& a, const Value& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        max_distance = spatial_diameter(pts, seed + dim.index);
        break;
      }
    }
    stats.max_point_distance[dim.index] = max_distance > 0.0 ? max_distance : 1.0;
  }
  return stats;
}

NormalizationStats unit_stats(std::size_t dimension_count) {
  return {std::vector<double>(dimension_count, 1.0)};
}

AlignmentProfile::AlignmentProfile(const Trajectory& source, Subtrajectory slice,
                                   const Trajectory& target,
                                   std::span<const DimensionDescriptor> dimensions,
                                   DimensionSet which)
    : width_(dimensions.size()) {
  if (slice.length == 0 || slice.start + slice.length > source.size()) {
    throw ParameterError("slice out of range for trajectory '" + source.tid() + "'");
  }
  if (target.size() < slice.length) return;
  offsets_ = target.size() - slice.length + 1;
  sums_.assign(offsets_ * width_, 0.0);
  const auto members = which.indices();
  for (std::size_t o = 0; o < offsets_; ++o) {
    double* row = sums_.data() + o * width_;
    for (std::size_t j = 0; j < slice.length; ++j) {
      const auto a = source.point(slice.start + j);
      const auto b = target.point(o + j);
      for (auto k : members) row[k] += point_distance(a[k], b[k], dimensions[k].kind);
    }
  }
}

DistanceVector AlignmentProfile::best(DimensionSet dims, const NormalizationStats& stats) const {
  if (dims.empty()) throw ParameterError("dimension subset must not be empty");
  const auto members = dims.indices();
  if (offsets_ == 0) return DistanceVector::not_containable(members.size());

  std::size_t best_offset = 0;
  double best_score = kNotContainable;
  for (std::size_t o = 0; o < offsets_; ++o) {
    double score = 0.0;
    for (auto k : members) score += sums_[o * width_ + k] / stats.max_point_distance[k];
    if (score < best_score) {
      best_score = score;
      best_offset = o;
    }
  }
  DistanceVector out;
  out.alignment_offset = best_offset;
  out.values.reserve(members.size());
  for (auto k : members) out.values.push_back(sums_[best_offset * width_ + k]);
  return out;
}

DistanceVector best_alignment(const Trajectory& source, Subtrajectory slice,
                              const Trajectory& target,
                              std::span<const DimensionDescriptor> dimensions, DimensionSet dims,
                              const NormalizationStats& stats) {
  if (dims.empty()) throw ParameterError("dimension subset must not be empty");
  if (!dims.is_subset_of(DimensionSet::all(dimensions.size()))) {
    throw ParameterError("dimension subset exceeds the dataset dimensions");
  }
  return AlignmentProfile(source, slice, target, dimensions, dims).best(dims, stats);
}

}  // namespace movelets
