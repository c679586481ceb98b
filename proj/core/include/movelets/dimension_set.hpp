#pragma once

#include <bit>
#include <string>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "movelets/error.hpp"

namespace movelets {

/// A non-empty subset C of the dataset dimensions, stored as a bit mask.
/// Bit k set means dimension index k belongs to the subset.
class DimensionSet {
 public:
  static constexpr std::size_t kMaxDimensions = 24;

  constexpr DimensionSet() = default;
  constexpr explicit DimensionSet(std::uint32_t mask) : mask_(mask) {}

  static DimensionSet all(std::size_t dimension_count) {
    if (dimension_count == 0 || dimension_count > kMaxDimensions) {
      throw ParameterError("dimension count must be in [1, " +
                           std::to_string(kMaxDimensions) + "]");
    }
    return DimensionSet((std::uint32_t{1} << dimension_count) - 1);
  }

  static DimensionSet single(std::size_t index) {
    return DimensionSet(std::uint32_t{1} << index);
  }

  constexpr std::uint32_t mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool contains(std::size_t index) const noexcept {
    return index < 32 && ((mask_ >> index) & 1U) != 0;
  }
  constexpr bool is_subset_of(DimensionSet other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }

  /// Member indices in increasing order.
  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    }
    return out;
  }

  /// Position of dimension `index` among the members, i.e. its column in
  /// a DistanceVector over this set.
  constexpr std::size_t rank_of(std::size_t index) const noexcept {
    return static_cast<std::size_t>(
        std::popcount(mask_ & ((std::uint32_t{1} << index) - 1)));
  }

  friend constexpr bool operator==(DimensionSet, DimensionSet) = default;
  friend constexpr auto operator<=>(DimensionSet a, DimensionSet b) {
    return a.mask_ <=> b.mask_;
  }

 private:
  std::uint32_t mask_ = 0;
};

/// Every non-empty subset of `dimension_count` dimensions, ordered by mask.
inline std::vector<DimensionSet> all_dimension_subsets(std::size_t dimension_count) {
  const auto full = DimensionSet::all(dimension_count).mask();
  std::vector<DimensionSet> out;
  out.reserve(full);
  for (std::uint32_t m = 1; m <= full; ++m) out.emplace_back(m);
  return out;
}

}  // namespace movelets
