#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace movelets {

/// Largest candidate size under the log limit: floor(log2(n)), at least 1.
std::size_t log_size_limit(std::size_t n);

/// Maximum candidate size for a trajectory of length n.
inline std::size_t size_limit(std::size_t n, bool log_limit) {
  return log_limit ? log_size_limit(n) : n;
}

/// Number of contiguous subtrajectories of sizes 1..limit (default n).
std::uint64_t count_subtrajectories(std::size_t n, std::optional<std::size_t> limit = std::nullopt);

/// Subtrajectories crossed with the 2^d - 1 non-empty dimension subsets.
std::uint64_t count_candidates(std::size_t n, std::size_t d,
                               std::optional<std::size_t> limit = std::nullopt);

}  // namespace movelets
