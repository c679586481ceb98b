#include "movelets/discovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "movelets/error.hpp"
#include "movelets/extraction.hpp"

namespace movelets {

namespace {

double f1(std::size_t true_positives, std::size_t predicted, std::size_t actual) {
  if (true_positives == 0) return 0.0;
  return 2.0 * static_cast<double>(true_positives) / static_cast<double>(predicted + actual);
}

const DistanceTable& table_for_coverage(const MoveletCandidate& c) {
  return c.dataset_distances.empty() ? c.class_distances : c.dataset_distances;
}

}  // namespace

double prevalence_floor(const Dataset& dataset, std::size_t source) {
  const auto positives = dataset.members_of(dataset.class_of(source)).size();
  return f1(positives, dataset.size(), positives);
}

SplitResult fscore_quality(const MoveletCandidate& candidate, const Dataset& dataset,
                           const NormalizationStats& stats) {
  const auto& table = candidate.dataset_distances;
  if (table.rows() != dataset.size()) {
    throw ParameterError("candidate distances must cover every dataset trajectory");
  }
  const std::size_t target_class = dataset.class_of(candidate.source);
  const std::size_t positives = dataset.members_of(target_class).size();

  std::vector<double> score(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) score[r] = stats.aggregate(table.row(r), candidate.dims);
  std::vector<std::size_t> order(table.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

  SplitResult result;
  result.split_points.assign(candidate.dims.size(), 0.0);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < order.size() && score[order[i]] != kNotContainable; ++i) {
    if (dataset.class_of(table.target(order[i])) == target_class) ++tp;
    const bool boundary = i + 1 == order.size() || score[order[i + 1]] != score[order[i]];
    if (!boundary) continue;
    const double f = f1(tp, i + 1, positives);
    if (f > result.fscore) {
      result.fscore = f;
      result.prefix_size = i + 1;
    }
  }
  if (result.prefix_size > 0) {
    result.margin = result.prefix_size < order.size()
                        ? score[order[result.prefix_size]] - score[order[result.prefix_size - 1]]
                        : kNotContainable;
  }
  for (std::size_t i = 0; i < result.prefix_size; ++i) {
    const auto row = table.row(order[i]);
    for (std::size_t j = 0; j < row.size(); ++j) {
      result.split_points[j] = std::max(result.split_points[j], row[j]);
    }
  }
  return result;
}

std::vector<Movelet> select_movelets(const Dataset& dataset, std::vector<MoveletCandidate> batch,
                                     const NormalizationStats& stats, WorkerPool* pool,
                                     std::size_t* scored, bool deduplicate) {
  if (deduplicate) batch = redundancy_filter(dataset, std::move(batch));
  if (scored != nullptr) *scored = batch.size();

  std::vector<std::size_t> everyone(dataset.size());
  std::iota(everyone.begin(), everyone.end(), 0);
  compute_distances(dataset, batch, everyone, stats, &MoveletCandidate::dataset_distances, pool);

  std::vector<SplitResult> splits(batch.size());
  auto score = [&](std::size_t i) { splits[i] = fscore_quality(batch[i], dataset, stats); };
  if (pool != nullptr) {
    pool->parallel_for(batch.size(), score);
  } else {
    for (std::size_t i = 0; i < batch.size(); ++i) score(i);
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (splits[i].fscore > 0.0 && splits[i].fscore > prevalence_floor(dataset, batch[i].source)) {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (splits[a].fscore != splits[b].fscore) return splits[a].fscore > splits[b].fscore;
    if (splits[a].margin != splits[b].margin) return splits[a].margin > splits[b].margin;
    if (batch[a].slice.length != batch[b].slice.length) {
      return batch[a].slice.length > batch[b].slice.length;
    }
    return batch[a].slice.start < batch[b].slice.start;
  });

  std::vector<Movelet> selected;
  for (auto i : order) {
    auto& c = batch[i];
    const bool overlaps = std::any_of(selected.begin(), selected.end(), [&](const Movelet& m) {
      return m.source() == c.source && m.slice().overlaps(c.slice);
    });
    if (overlaps) continue;

    Movelet m;
    m.fscore = splits[i].fscore;
    m.margin = splits[i].margin;
    m.split_points = splits[i].split_points;
    const auto& table = c.dataset_distances;
    for (std::size_t r = 0; r < table.rows(); ++r) {
      const auto row = table.row(r);
      bool inside = table.containable(r);
      for (std::size_t j = 0; inside && j < row.size(); ++j) inside = row[j] <= m.split_points[j];
      if (inside) m.covered_dataset.push_back(table.target(r));
    }
    c.quality = {m.fscore, QualityKind::fscore, m.split_points};
    m.candidate = std::move(c);
    selected.push_back(std::move(m));
  }
  return selected;
}

DiscoveryResult discover_movelets(const Dataset& dataset, std::vector<MoveletCandidate> best,
                                  std::vector<MoveletCandidate> bucket,
                                  const NormalizationStats& stats, WorkerPool* pool) {
  DiscoveryResult result;
  DiscoveryStep first{0, best.size(), 0, 0};
  result.movelets = select_movelets(dataset, std::move(best), stats, pool, &first.candidates_scored);
  first.movelets_found = result.movelets.size();
  result.candidates_scored += first.candidates_scored;
  result.trace.push_back(first);
  if (!result.movelets.empty() || bucket.empty()) return result;

  result.used_bucket = true;
  std::stable_sort(bucket.begin(), bucket.end(), [](const MoveletCandidate& a, const MoveletCandidate& b) {
    return a.frequency > b.frequency;
  });
  const std::size_t slice_size = (bucket.size() + 9) / 10;
  std::size_t slice = 0;
  for (std::size_t begin = 0; begin < bucket.size(); begin += slice_size) {
    const std::size_t end = std::min(bucket.size(), begin + slice_size);
    std::vector<MoveletCandidate> batch(std::make_move_iterator(bucket.begin() + static_cast<std::ptrdiff_t>(begin)),
                                        std::make_move_iterator(bucket.begin() + static_cast<std::ptrdiff_t>(end)));
    DiscoveryStep step{++slice, batch.size(), 0, 0};
    result.movelets = select_movelets(dataset, std::move(batch), stats, pool, &step.candidates_scored);
    step.movelets_found = result.movelets.size();
    result.candidates_scored += step.candidates_scored;
    result.trace.push_back(step);
    if (!result.movelets.empty()) break;
  }
  return result;
}

std::vector<std::size_t> covered_by_movelet(const Movelet& movelet,
                                            std::span<const std::size_t> class_set) {
  const auto& table = table_for_coverage(movelet.candidate);
  std::vector<std::size_t> out;
  for (auto t : class_set) {
    auto r = table.find(t);
    if (r && table.containable(*r) && table.all_zero(*r)) out.push_back(t);
  }
  return out;
}

std::vector<std::size_t> covered_trajectories(std::span<const Movelet> movelets,
                                              std::span<const std::size_t> class_set) {
  std::map<std::size_t, std::size_t> count;
  for (const auto& m : movelets) {
    for (auto t : covered_by_movelet(m, class_set)) ++count[t];
  }
  std::vector<std::size_t> out;
  for (const auto& [t, n] : count) {
    if (2 * n > movelets.size()) out.push_back(t);
  }
  return out;
}

}  // namespace movelets
