#include "movelets/extraction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "movelets/combinatorics.hpp"
#include "movelets/error.hpp"

namespace movelets {

namespace {

void check_class_set(std::size_t source, std::span<const std::size_t> class_set) {
  if (class_set.empty()) throw ParameterError("class trajectory set must not be empty");
  if (std::find(class_set.begin(), class_set.end(), source) == class_set.end()) {
    throw ParameterError("source trajectory must belong to its class set");
  }
}

void sort_by_frequency(std::vector<MoveletCandidate>& candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const MoveletCandidate& a, const MoveletCandidate& b) {
                     return a.frequency > b.frequency;
                   });
}

void mark_covered(MoveletCandidate& c) {
  c.covered.clear();
  for (std::size_t r = 0; r < c.class_distances.rows(); ++r) {
    if (c.class_distances.all_zero(r)) c.covered.push_back(c.class_distances.target(r));
  }
}

MoveletCandidate make_candidate(std::size_t source, Subtrajectory slice, DimensionSet dims) {
  MoveletCandidate c;
  c.source = source;
  c.slice = slice;
  c.dims = dims;
  return c;
}

/// Scores a freshly generated batch: class distances, scale update, quality.
void score_batch(const Dataset& dataset, std::vector<MoveletCandidate>& batch,
                 std::span<const std::size_t> class_set, const NormalizationStats& stats,
                 std::vector<double>& scale, WorkerPool* pool) {
  compute_distances(dataset, batch, class_set, stats, &MoveletCandidate::class_distances, pool);
  update_frequency_scale(scale, batch);
  for (auto& c : batch) {
    frequency_quality(c, scale);
    mark_covered(c);
  }
}

}  // namespace

void ExtractionConfig::validate() const {
  if (!(tau_factor > 0.0 && tau_factor <= 1.0)) {
    throw ParameterError("tau_factor must be in (0, 1]");
  }
}

std::vector<double> frequency_scale(std::span<const MoveletCandidate> pool,
                                    std::size_t dimension_count) {
  std::vector<double> scale(dimension_count, 0.0);
  update_frequency_scale(scale, pool);
  return scale;
}

void update_frequency_scale(std::vector<double>& scale, std::span<const MoveletCandidate> pool) {
  for (const auto& c : pool) {
    const auto members = c.dims.indices();
    const auto& table = c.class_distances;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      if (!table.containable(r)) continue;
      const auto row = table.row(r);
      for (std::size_t j = 0; j < members.size(); ++j) {
        scale[members[j]] = std::max(scale[members[j]], row[j]);
      }
    }
  }
}

double relative_frequency(const MoveletCandidate& candidate, std::size_t dim,
                          std::span<const double> scale) {
  if (!candidate.dims.contains(dim)) {
    throw ParameterError("dimension " + std::to_string(dim) + " is not in the candidate's subset");
  }
  const auto& table = candidate.class_distances;
  if (table.rows() == 0) throw ParameterError("candidate has no class distances");
  const std::size_t col = candidate.dims.rank_of(dim);
  const double max_w = scale[dim];

  double numerator = 0.0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (!table.containable(r)) continue;  // contributes max_w - max_w = 0
    numerator += max_w == 0.0 ? 1.0 : (max_w - table.row(r)[col]) / max_w;
  }
  return numerator / static_cast<double>(table.rows());
}

double frequency_quality(MoveletCandidate& candidate, std::span<const double> scale) {
  double total = 0.0;
  for (auto k : candidate.dims.indices()) total += relative_frequency(candidate, k, scale);
  const double q = total / static_cast<double>(candidate.dims.size());
  candidate.frequency = q;
  candidate.quality = {q, QualityKind::frequency, std::nullopt};
  return q;
}

std::vector<MoveletCandidate> redundancy_filter(const Dataset& dataset,
                                                std::vector<MoveletCandidate> candidates,
                                                std::size_t* removed) {
  std::map<std::pair<std::uint32_t, std::vector<double>>, std::size_t> seen;
  std::vector<MoveletCandidate> out;
  out.reserve(candidates.size());
  std::size_t dropped = 0;
  for (auto& c : candidates) {
    const auto& t = dataset.trajectory(c.source);
    std::vector<double> key;
    const auto members = c.dims.indices();
    key.reserve(c.slice.length * members.size() * 2);
    for (std::size_t j = 0; j < c.slice.length; ++j) {
      for (auto k : members) {
        const auto& v = t.value(c.slice.start + j, k);
        key.push_back(v.x);
        key.push_back(v.y);
      }
    }
    auto [it, inserted] = seen.try_emplace({c.dims.mask(), std::move(key)}, out.size());
    if (inserted) {
      out.push_back(std::move(c));
    } else {
      out[it->second].occurrences += c.occurrences;
      ++dropped;
    }
  }
  if (removed != nullptr) *removed = dropped;
  return out;
}

std::vector<MoveletCandidate> enumerate_candidates(const Dataset& dataset, std::size_t source,
                                                   bool log_limit) {
  const auto& t = dataset.trajectory(source);
  const std::size_t m = size_limit(t.size(), log_limit);
  const auto subsets = all_dimension_subsets(dataset.dimension_count());
  std::vector<MoveletCandidate> out;
  out.reserve(count_candidates(t.size(), dataset.dimension_count(), m));
  for (std::size_t w = 1; w <= m; ++w) {
    for (std::size_t s = 0; s + w <= t.size(); ++s) {
      for (auto dims : subsets) out.push_back(make_candidate(source, {s, w}, dims));
    }
  }
  return out;
}

ExtractionResult extract_no_pivots(const Dataset& dataset, std::size_t source,
                                   std::span<const std::size_t> class_set,
                                   const NormalizationStats& stats, const ExtractionConfig& cfg,
                                   WorkerPool* pool) {
  cfg.validate();
  check_class_set(source, class_set);

  auto candidates = enumerate_candidates(dataset, source, cfg.log_limit);
  ExtractionResult result;
  result.candidates_generated = candidates.size();

  std::vector<double> scale(dataset.dimension_count(), 0.0);
  score_batch(dataset, candidates, class_set, stats, scale, pool);
  sort_by_frequency(candidates);

  result.tau = candidates.front().frequency * cfg.tau_factor;
  result.scored.reserve(candidates.size());
  for (const auto& c : candidates) {
    result.scored.push_back({c.slice, c.dims, c.frequency, c.frequency >= result.tau});
  }
  auto split = std::partition_point(candidates.begin(), candidates.end(),
                                    [&](const MoveletCandidate& c) { return c.frequency >= result.tau; });
  std::vector<MoveletCandidate> kept(std::make_move_iterator(candidates.begin()),
                                     std::make_move_iterator(split));
  result.bucket.assign(std::make_move_iterator(split), std::make_move_iterator(candidates.end()));
  result.best_candidates = redundancy_filter(dataset, std::move(kept), &result.duplicates_removed);
  return result;
}

std::vector<Subtrajectory> pivot_neighbourhood(std::span<const Subtrajectory> survivors,
                                               std::size_t length) {
  std::set<Subtrajectory> out;
  for (const auto& s : survivors) {
    if (s.start > 0) out.insert({s.start - 1, s.length + 1});
    if (s.end() + 1 < length) out.insert({s.start, s.length + 1});
  }
  return {out.begin(), out.end()};
}

ExtractionResult extract_pivots(const Dataset& dataset, std::size_t source,
                                std::span<const std::size_t> class_set,
                                const NormalizationStats& stats, const ExtractionConfig& cfg,
                                WorkerPool* pool) {
  cfg.validate();
  check_class_set(source, class_set);

  const auto& t = dataset.trajectory(source);
  const std::size_t m = size_limit(t.size(), cfg.log_limit);
  const auto subsets = all_dimension_subsets(dataset.dimension_count());

  ExtractionResult result;
  std::vector<MoveletCandidate> best;
  std::vector<double> scale(dataset.dimension_count(), 0.0);

  // Surviving slices of the previous size, per dimension subset.
  std::map<std::uint32_t, std::vector<Subtrajectory>> frontier;

  for (std::size_t w = 1; w <= m; ++w) {
    std::vector<MoveletCandidate> batch;
    if (w == 1) {
      for (std::size_t s = 0; s < t.size(); ++s) {
        for (auto dims : subsets) batch.push_back(make_candidate(source, {s, 1}, dims));
      }
    } else {
      std::vector<std::pair<Subtrajectory, std::uint32_t>> generated;
      for (const auto& [mask, slices] : frontier) {
        for (const auto& slice : pivot_neighbourhood(slices, t.size())) {
          generated.emplace_back(slice, mask);
        }
      }
      std::sort(generated.begin(), generated.end());
      for (const auto& [slice, mask] : generated) {
        batch.push_back(make_candidate(source, slice, DimensionSet(mask)));
      }
    }
    if (batch.empty()) break;
    result.candidates_generated += batch.size();

    score_batch(dataset, batch, class_set, stats, scale, pool);
    sort_by_frequency(batch);
    const double tau = batch.front().frequency * cfg.tau_factor;
    result.size_taus.push_back(tau);

    // Tau filter, then among overlapping survivors of one subset keep the
    // higher quality one.
    frontier.clear();
    for (auto& c : batch) {
      bool keep = c.frequency >= tau;
      if (keep) {
        auto& kept = frontier[c.dims.mask()];
        keep = std::none_of(kept.begin(), kept.end(),
                            [&](const Subtrajectory& s) { return s.overlaps(c.slice); });
        if (keep) kept.push_back(c.slice);
      }
      result.scored.push_back({c.slice, c.dims, c.frequency, keep});
      (keep ? best : result.bucket).push_back(std::move(c));
    }
    std::erase_if(frontier, [](const auto& entry) { return entry.second.empty(); });
  }

  result.tau = result.size_taus.empty() ? 0.0 : result.size_taus.front();
  sort_by_frequency(best);
  sort_by_frequency(result.bucket);
  result.best_candidates = redundancy_filter(dataset, std::move(best), &result.duplicates_removed);
  return result;
}

ExtractionResult extract(const Dataset& dataset, std::size_t source,
                         std::span<const std::size_t> class_set, const NormalizationStats& stats,
                         const ExtractionConfig& cfg, WorkerPool* pool) {
  return cfg.variant == ExtractionVariant::pivots
             ? extract_pivots(dataset, source, class_set, stats, cfg, pool)
             : extract_no_pivots(dataset, source, class_set, stats, cfg, pool);
}

}  // namespace movelets
