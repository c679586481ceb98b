#include "movelets/combinatorics.hpp"

#include <algorithm>
#include <bit>

#include "movelets/error.hpp"

namespace movelets {

std::size_t log_size_limit(std::size_t n) {
  if (n == 0) throw ParameterError("trajectory length must be at least 1");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(n)) - 1);
}

std::uint64_t count_subtrajectories(std::size_t n, std::optional<std::size_t> limit) {
  if (n == 0) throw ParameterError("trajectory length must be at least 1");
  const std::uint64_t m = std::min<std::uint64_t>(limit.value_or(n), n);
  // sum_{w=1..m} (n - w + 1)
  return m * (n + 1) - m * (m + 1) / 2;
}

std::uint64_t count_candidates(std::size_t n, std::size_t d, std::optional<std::size_t> limit) {
  if (d == 0 || d > 63) throw ParameterError("dimension count must be in [1, 63]");
  return count_subtrajectories(n, limit) * ((std::uint64_t{1} << d) - 1);
}

}  // namespace movelets
