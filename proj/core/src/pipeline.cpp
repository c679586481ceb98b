#include "movelets/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <iomanip>
#include <ostream>

#include "movelets/distance.hpp"
#include "movelets/error.hpp"

namespace movelets {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void accumulate(ClassReport& total, const ClassReport& c) {
  total.class_size += c.class_size;
  total.candidates_generated += c.candidates_generated;
  total.candidates_scored += c.candidates_scored;
  total.movelets_found += c.movelets_found;
  total.trajectories_compared += c.trajectories_compared;
  total.trajectories_pruned += c.trajectories_pruned;
  total.bucket_recoveries += c.bucket_recoveries;
  total.wall_seconds += c.wall_seconds;
}

}  // namespace

std::string method_name(const RunConfig& cfg) {
  return cfg.extraction.variant == ExtractionVariant::pivots ? "hiper-pivots" : "hiper";
}

RunResult run(const Dataset& dataset, const RunConfig& cfg) {
  cfg.extraction.validate();
  if (cfg.workers == 0) throw ParameterError("worker count must be at least 1");
  if (dataset.classes().size() < 2) {
    throw ConfigurationError("at least 2 classes required");
  }
  const auto started = Clock::now();
  const auto stats = compute_stats(dataset, cfg.seed);
  WorkerPool pool(cfg.workers);

  RunResult result;
  auto& report = result.report;
  report.method = method_name(cfg);
  report.config = cfg;
  report.total.label = "total";

  for (std::size_t c = 0; c < dataset.classes().size(); ++c) {
    const auto class_started = Clock::now();
    const auto& members = dataset.members_of(c);
    ClassReport cr;
    cr.label = dataset.classes()[c];
    cr.class_size = members.size();

    std::deque<std::size_t> queue(members.begin(), members.end());
    while (!queue.empty()) {
      const std::size_t ti = queue.front();
      queue.pop_front();
      ++cr.trajectories_compared;
      cr.processed.push_back(dataset.trajectory(ti).tid());

      auto extraction = extract(dataset, ti, members, stats, cfg.extraction, &pool);
      TrajectoryTrace trace;
      trace.tid = dataset.trajectory(ti).tid();
      trace.candidates_generated = extraction.candidates_generated;
      trace.best_candidates = extraction.best_candidates.size();
      trace.bucket = extraction.bucket.size();
      cr.candidates_generated += extraction.candidates_generated;

      auto discovery = discover_movelets(dataset, std::move(extraction.best_candidates),
                                         std::move(extraction.bucket), stats, &pool);
      cr.candidates_scored += discovery.candidates_scored;
      if (discovery.used_bucket) ++cr.bucket_recoveries;
      trace.movelets = discovery.movelets.size();
      trace.discovery = std::move(discovery.trace);
      report.trajectories.push_back(std::move(trace));

      const auto covered = covered_trajectories(discovery.movelets, members);
      for (auto t : covered) {
        auto it = std::find(queue.begin(), queue.end(), t);
        if (it == queue.end()) continue;
        queue.erase(it);
        ++cr.trajectories_pruned;
        cr.pruned.push_back(dataset.trajectory(t).tid());
      }
      cr.movelets_found += discovery.movelets.size();
      for (auto& m : discovery.movelets) result.movelets.push_back(std::move(m));
    }
    cr.wall_seconds = seconds_since(class_started);
    accumulate(report.total, cr);
    report.classes.push_back(std::move(cr));
  }
  report.wall_seconds = seconds_since(started);
  return result;
}

void write_report_text(std::ostream& out, const RunReport& report) {
  out << "method: " << report.method << "\n";
  out << "log_limit: " << (report.config.extraction.log_limit ? "true" : "false")
      << "  tau_factor: " << report.config.extraction.tau_factor
      << "  workers: " << report.config.workers << "  seed: " << report.config.seed << "\n";
  out << std::left << std::setw(16) << "class" << std::right << std::setw(8) << "size"
      << std::setw(14) << "candidates" << std::setw(10) << "scored" << std::setw(10) << "movelets"
      << std::setw(10) << "compared" << std::setw(8) << "pruned" << std::setw(12) << "seconds"
      << "\n";
  auto row = [&](const ClassReport& c) {
    out << std::left << std::setw(16) << c.label << std::right << std::setw(8) << c.class_size
        << std::setw(14) << c.candidates_generated << std::setw(10) << c.candidates_scored
        << std::setw(10) << c.movelets_found << std::setw(10) << c.trajectories_compared
        << std::setw(8) << c.trajectories_pruned << std::setw(12) << std::fixed
        << std::setprecision(4) << c.wall_seconds << std::defaultfloat << "\n";
  };
  for (const auto& c : report.classes) row(c);
  row(report.total);
  out << "wall_seconds: " << report.wall_seconds << "\n";
}

void write_report_kv(std::ostream& out, const RunReport& report) {
  out << "method=" << report.method << "\n";
  out << "config.log_limit=" << (report.config.extraction.log_limit ? "true" : "false") << "\n";
  out << "config.tau_factor=" << report.config.extraction.tau_factor << "\n";
  out << "config.workers=" << report.config.workers << "\n";
  out << "config.seed=" << report.config.seed << "\n";
  auto block = [&](const std::string& prefix, const ClassReport& c) {
    out << prefix << "class_size=" << c.class_size << "\n";
    out << prefix << "candidates_generated=" << c.candidates_generated << "\n";
    out << prefix << "candidates_scored=" << c.candidates_scored << "\n";
    out << prefix << "movelets_found=" << c.movelets_found << "\n";
    out << prefix << "trajectories_compared=" << c.trajectories_compared << "\n";
    out << prefix << "trajectories_pruned=" << c.trajectories_pruned << "\n";
    out << prefix << "bucket_recoveries=" << c.bucket_recoveries << "\n";
    out << prefix << "wall_seconds=" << c.wall_seconds << "\n";
  };
  for (const auto& c : report.classes) block("class." + c.label + ".", c);
  block("total.", report.total);
  out << "wall_seconds=" << report.wall_seconds << "\n";
}

}  // namespace movelets
