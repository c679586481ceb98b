#include "movelets/baseline.hpp"

#include <chrono>

#include "movelets/error.hpp"

namespace movelets {

RunResult run_exhaustive(const Dataset& dataset, const BaselineConfig& cfg) {
  if (cfg.workers == 0) throw ParameterError("worker count must be at least 1");
  if (dataset.classes().size() < 2) {
    throw ConfigurationError("at least 2 classes required");
  }
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const auto stats = compute_stats(dataset, cfg.seed);
  WorkerPool pool(cfg.workers);

  RunResult result;
  auto& report = result.report;
  report.method = "exhaustive";
  report.config.extraction.log_limit = cfg.log_limit;
  report.config.extraction.tau_factor = 1.0;
  report.config.workers = cfg.workers;
  report.config.seed = cfg.seed;
  report.total.label = "total";

  for (std::size_t c = 0; c < dataset.classes().size(); ++c) {
    const auto class_started = Clock::now();
    ClassReport cr;
    cr.label = dataset.classes()[c];
    cr.class_size = dataset.members_of(c).size();
    for (auto ti : dataset.members_of(c)) {
      auto candidates = enumerate_candidates(dataset, ti, cfg.log_limit);
      TrajectoryTrace trace;
      trace.tid = dataset.trajectory(ti).tid();
      trace.candidates_generated = candidates.size();
      cr.candidates_generated += candidates.size();

      std::size_t scored = 0;
      auto movelets = select_movelets(dataset, std::move(candidates), stats, &pool, &scored, false);
      cr.candidates_scored += scored;
      ++cr.trajectories_compared;
      cr.processed.push_back(trace.tid);
      trace.movelets = movelets.size();
      trace.discovery.push_back({0, scored, scored, movelets.size()});
      report.trajectories.push_back(std::move(trace));

      cr.movelets_found += movelets.size();
      for (auto& m : movelets) result.movelets.push_back(std::move(m));
    }
    cr.wall_seconds = std::chrono::duration<double>(Clock::now() - class_started).count();

    report.total.class_size += cr.class_size;
    report.total.candidates_generated += cr.candidates_generated;
    report.total.candidates_scored += cr.candidates_scored;
    report.total.movelets_found += cr.movelets_found;
    report.total.trajectories_compared += cr.trajectories_compared;
    report.total.wall_seconds += cr.wall_seconds;
    report.classes.push_back(std::move(cr));
  }
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return result;
}

}  // namespace movelets
