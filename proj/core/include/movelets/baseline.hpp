#pragma once

#include <cstddef>
#include <cstdint>

#include "movelets/pipeline.hpp"

namespace movelets {

struct BaselineConfig {
  bool log_limit = true;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
};

/// Exhaustive reference extractor: every candidate of every trajectory is
/// scored with F-Score against the whole dataset and the best
/// non-overlapping ones are kept. Scoring and selection are shared with
/// `run`, so differences between the two reflect only the search space.
RunResult run_exhaustive(const Dataset& dataset, const BaselineConfig& cfg);

}  // namespace movelets
