#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "movelets/discovery.hpp"
#include "movelets/extraction.hpp"

namespace movelets {

struct RunConfig {
  ExtractionConfig extraction;
  std::size_t workers = 1;
  /// Seeds the sampled part of compute_stats.
  std::uint64_t seed = 0;
};

struct ClassReport {
  std::string label;
  std::size_t class_size = 0;
  std::uint64_t candidates_generated = 0;
  /// Candidates scored with F-Score against the whole dataset.
  std::uint64_t candidates_scored = 0;
  std::size_t movelets_found = 0;
  std::size_t trajectories_compared = 0;
  std::size_t trajectories_pruned = 0;
  std::size_t bucket_recoveries = 0;
  double wall_seconds = 0.0;
  /// tids in the order they were popped from the queue.
  std::vector<std::string> processed;
  std::vector<std::string> pruned;
};

struct TrajectoryTrace {
  std::string tid;
  std::uint64_t candidates_generated = 0;
  std::size_t best_candidates = 0;
  std::size_t bucket = 0;
  std::size_t movelets = 0;
  std::vector<DiscoveryStep> discovery;
};

struct RunReport {
  std::string method;
  RunConfig config;
  std::vector<ClassReport> classes;
  ClassReport total;
  std::vector<TrajectoryTrace> trajectories;
  double wall_seconds = 0.0;
};

struct RunResult {
  std::vector<Movelet> movelets;
  RunReport report;
};

/// Class-by-class queue loop: pop a trajectory, extract frequent candidates
/// against its class, discover movelets against the dataset, then drop the
/// class trajectories the new movelets cover from the queue.
/// Throws ConfigurationError for datasets with fewer than two classes.
RunResult run(const Dataset& dataset, const RunConfig& cfg);

std::string method_name(const RunConfig& cfg);

void write_report_text(std::ostream& out, const RunReport& report);
/// One `key=value` per line.
void write_report_kv(std::ostream& out, const RunReport& report);

}  // namespace movelets
