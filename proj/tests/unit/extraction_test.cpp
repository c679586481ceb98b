#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "fixtures.hpp"
#include "movelets/combinatorics.hpp"
#include "movelets/error.hpp"
#include "movelets/extraction.hpp"
#include "movelets/synthetic.hpp"
#include "oracles.hpp"

namespace movelets {
namespace {

using testing::categorical_dataset;
using testing::iota_indices;

/// Candidate over `dims` whose class distance rows are given directly.
MoveletCandidate with_distances(DimensionSet dims, const std::vector<std::vector<double>>& rows) {
  MoveletCandidate c;
  c.dims = dims;
  c.class_distances = DistanceTable(iota_indices(rows.size()), dims.size());
  for (std::size_t r = 0; r < rows.size(); ++r) c.class_distances.set(r, {rows[r], 0});
  return c;
}

TEST(RelativeFrequency, ZeroDistanceEverywhereIsOne) {
  const auto c = with_distances(DimensionSet(1), {{0}, {0}, {0}});
  const std::vector<double> scale{3.0};
  EXPECT_EQ(relative_frequency(c, 0, scale), 1.0);
}

TEST(RelativeFrequency, MaximalDistanceEverywhereIsZero) {
  const auto c = with_distances(DimensionSet(1), {{3}, {3}});
  const std::vector<double> scale{3.0};
  EXPECT_EQ(relative_frequency(c, 0, scale), 0.0);
}

TEST(RelativeFrequency, HandEvaluatedMixedDistances) {
  const auto c = with_distances(DimensionSet(1), {{0}, {2}});
  const std::vector<double> scale{4.0};
  const double expected = oracle::eq1({0.0, 2.0}, 4.0);
  EXPECT_DOUBLE_EQ(expected, 0.75);
  EXPECT_DOUBLE_EQ(relative_frequency(c, 0, scale), expected);
}

TEST(RelativeFrequency, NotContainableCountsAsMaximal) {
  const auto c = with_distances(DimensionSet(1), {{0}, {kNotContainable}});
  const std::vector<double> scale{2.0};
  EXPECT_DOUBLE_EQ(relative_frequency(c, 0, scale), 0.5);
}

TEST(RelativeFrequency, RejectsDimensionOutsideSubset) {
  const auto c = with_distances(DimensionSet(0b01), {{0}});
  const std::vector<double> scale{1.0, 1.0};
  EXPECT_THROW(relative_frequency(c, 1, scale), ParameterError);
}

TEST(FrequencyQuality, MeanOverDimensions) {
  // per-dimension frequencies 1.0 and 0.5
  auto two = with_distances(DimensionSet(0b11), {{0, 2}});
  const std::vector<double> scale2{4.0, 4.0};
  EXPECT_DOUBLE_EQ(frequency_quality(two, scale2), 0.75);
  EXPECT_EQ(two.quality.kind, QualityKind::frequency);
  EXPECT_FALSE(two.quality.split_points.has_value());

  // (0.9, 0.6, 0.0)
  auto three = with_distances(DimensionSet(0b111), {{1, 4, 10}});
  const std::vector<double> scale3{10.0, 10.0, 10.0};
  const double expected = oracle::eq2({0.9, 0.6, 0.0});
  EXPECT_DOUBLE_EQ(expected, 0.5);
  EXPECT_NEAR(frequency_quality(three, scale3), expected, 1e-12);

  auto one = with_distances(DimensionSet(0b1), {{1}, {3}});
  const std::vector<double> scale1{4.0};
  EXPECT_DOUBLE_EQ(frequency_quality(one, scale1), relative_frequency(one, 0, scale1));
}

TEST(FrequencyQuality, RandomCandidatesMatchStraightLineFormula) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint32_t> pick_mask(1, 15);
  std::uniform_int_distribution<std::size_t> pick_rows(1, 8);
  std::uniform_real_distribution<double> dist(0.0, 5.0);
  std::bernoulli_distribution missing(0.1);
  for (int trial = 0; trial < 300; ++trial) {
    const DimensionSet dims(pick_mask(rng));
    std::vector<std::vector<double>> rows(pick_rows(rng));
    for (auto& row : rows) {
      if (missing(rng)) {
        row.assign(dims.size(), kNotContainable);
      } else {
        for (std::size_t j = 0; j < dims.size(); ++j) row.push_back(dist(rng));
      }
    }
    auto c = with_distances(dims, rows);
    const auto scale = frequency_scale(std::span<const MoveletCandidate>(&c, 1), 4);
    std::vector<double> per_dim;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const auto k = dims.indices()[j];
      std::vector<std::optional<double>> column;
      double max_w = 0.0;
      for (const auto& row : rows) {
        if (row[j] == kNotContainable) {
          column.push_back(std::nullopt);
        } else {
          column.push_back(row[j]);
          max_w = std::max(max_w, row[j]);
        }
      }
      const double f = oracle::eq1(column, max_w);
      EXPECT_NEAR(relative_frequency(c, k, scale), f, 1e-9);
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
      per_dim.push_back(f);
    }
    const double q = frequency_quality(c, scale);
    EXPECT_NEAR(q, oracle::eq2(per_dim), 1e-9);
    EXPECT_EQ(q == 1.0, std::all_of(per_dim.begin(), per_dim.end(), [](double f) { return f == 1.0; }));
  }
}

TEST(ExtractNoPivots, ScoresEveryCandidate) {
  {
    RandomDatasetOptions opt;
    opt.kinds = {DimensionKind::categorical, DimensionKind::numeric, DimensionKind::spatial};
    opt.min_len = opt.max_len = 10;
    const auto ds = generate_random_dataset(opt, 1);
    ExtractionConfig cfg;
    cfg.log_limit = false;
    const auto r = extract_no_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
    EXPECT_EQ(r.candidates_generated, 385u);
    EXPECT_EQ(r.scored.size(), 385u);
  }
  {
    RandomDatasetOptions opt;
    opt.kinds.assign(6, DimensionKind::categorical);
    opt.min_len = opt.max_len = 20;
    opt.trajs_per_class = 2;
    const auto ds = generate_random_dataset(opt, 2);
    ExtractionConfig cfg;
    cfg.log_limit = true;
    const auto r = extract_no_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
    EXPECT_EQ(r.candidates_generated, 4662u);
  }
}

TEST(ExtractNoPivots, UniverseEqualsBruteEnumeration) {
  RandomDatasetOptions opt;
  opt.kinds = {DimensionKind::categorical, DimensionKind::numeric};
  opt.min_len = 1;
  opt.max_len = 12;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ds = generate_random_dataset(opt, seed);
    for (bool log_limit : {false, true}) {
      ExtractionConfig cfg;
      cfg.log_limit = log_limit;
      const auto r = extract_no_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
      std::set<std::tuple<std::size_t, std::size_t, std::uint32_t>> got;
      for (const auto& k : r.scored) got.insert({k.slice.start, k.slice.length, k.dims.mask()});
      const std::size_t n = ds.trajectory(0).size();
      EXPECT_EQ(got, oracle::brute_universe(n, 2, size_limit(n, log_limit)));
      EXPECT_EQ(r.scored.size(), got.size());
      EXPECT_EQ(r.best_candidates.size() + r.bucket.size() + r.duplicates_removed, r.scored.size());
    }
  }
}

TEST(ExtractNoPivots, TauPartitionsBestAndBucket) {
  RandomDatasetOptions opt;
  opt.kinds = {DimensionKind::categorical, DimensionKind::numeric};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ds = generate_random_dataset(opt, seed);
    ExtractionConfig cfg;
    cfg.tau_factor = 0.8;
    const auto r = extract_no_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
    ASSERT_FALSE(r.best_candidates.empty());
    for (const auto& c : r.best_candidates) {
      EXPECT_GE(c.frequency, r.tau);
      EXPECT_GE(c.quality.value, 0.0);
      EXPECT_LE(c.quality.value, 1.0);
    }
    for (const auto& c : r.bucket) EXPECT_LT(c.frequency, r.tau);
    for (std::size_t i = 1; i < r.bucket.size(); ++i) {
      EXPECT_GE(r.bucket[i - 1].frequency, r.bucket[i].frequency);
    }
  }
}

TEST(ExtractNoPivots, CoveredSetIsHardContainmentWithinClass) {
  const auto ds = categorical_dataset({{"a", "A", {"x", "y", "z"}},
                                       {"b", "A", {"q", "x", "y"}},
                                       {"c", "A", {"y", "q", "q"}},
                                       {"d", "B", {"x", "y", "z"}}});
  ExtractionConfig cfg;
  cfg.log_limit = false;
  cfg.tau_factor = 0.1;
  const auto r = extract_no_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
  for (const auto& c : r.best_candidates) {
    for (auto t : c.covered) EXPECT_EQ(ds.class_of(t), 0u);
    if (c.slice == Subtrajectory{0, 2}) EXPECT_EQ(c.covered, (std::vector<std::size_t>{0, 1}));
    if (c.slice == Subtrajectory{1, 1}) EXPECT_EQ(c.covered, (std::vector<std::size_t>{0, 1, 2}));
  }
}

TEST(ExtractNoPivots, SingletonClassGivesFullFrequency) {
  const auto ds = categorical_dataset({{"a", "A", {"x", "y"}}, {"b", "B", {"z", "w"}}});
  ExtractionConfig cfg;
  cfg.log_limit = false;
  const auto r = extract_no_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
  for (const auto& c : r.best_candidates) EXPECT_EQ(c.frequency, 1.0);
  EXPECT_TRUE(r.bucket.empty());  // uniform quality: nothing falls below tau
  EXPECT_EQ(r.best_candidates.size(), 3u);
}

TEST(ExtractNoPivots, RejectsBadInputs) {
  const auto ds = categorical_dataset({{"a", "A", {"x"}}, {"b", "B", {"z"}}});
  const auto stats = compute_stats(ds);
  EXPECT_THROW(extract_no_pivots(ds, 0, {}, stats, {}), ParameterError);
  const std::vector<std::size_t> other{1};
  EXPECT_THROW(extract_no_pivots(ds, 0, other, stats, {}), ParameterError);
  ExtractionConfig bad;
  bad.tau_factor = 0.0;
  EXPECT_THROW(extract_no_pivots(ds, 0, ds.members_of(0), stats, bad), ParameterError);
  bad.tau_factor = 1.5;
  EXPECT_THROW(extract_pivots(ds, 0, ds.members_of(0), stats, bad), ParameterError);
}

TEST(RedundancyFilter, ExactDuplicatesOnly) {
  const auto ds = categorical_dataset({{"a", "A", {"cafe", "home", "cafe"}}});
  std::vector<MoveletCandidate> in(2);
  in[0].source = in[1].source = 0;
  in[0].slice = {0, 1};
  in[1].slice = {2, 1};
  in[0].dims = in[1].dims = DimensionSet(1);
  const auto out = redundancy_filter(ds, in);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].slice.start, 0u);
  EXPECT_EQ(out[0].occurrences, 2u);
}

TEST(RedundancyFilter, DifferentDimensionSubsetsAreKept) {
  std::vector<Trajectory> trajectories{
      Trajectory("a", "A", 2, {Value::symbol(0), Value::numeric(1), Value::symbol(0), Value::numeric(1)})};
  Vocabulary vocab(2);
  vocab[0].intern("cafe");
  const Dataset ds({{"poi", DimensionKind::categorical, 0}, {"v", DimensionKind::numeric, 1}},
                   trajectories, vocab);
  std::vector<MoveletCandidate> in(2);
  in[0].slice = {0, 1};
  in[1].slice = {1, 1};
  in[0].dims = DimensionSet(0b01);
  in[1].dims = DimensionSet(0b11);
  EXPECT_EQ(redundancy_filter(ds, in).size(), 2u);
}

TEST(RedundancyFilter, RepeatedPointsCollapseWithCount) {
  const std::size_t k = 6;
  const auto ds = categorical_dataset({{"a", "A", std::vector<std::string>(k, "cafe")},
                                       {"b", "B", {"x"}}});
  ExtractionConfig cfg;
  cfg.log_limit = false;
  // size-1 candidates over {poi} only: with one dimension that is all of them.
  auto candidates = enumerate_candidates(ds, 0, cfg.log_limit);
  std::erase_if(candidates, [](const MoveletCandidate& c) { return c.slice.length != 1; });
  ASSERT_EQ(candidates.size(), k);
  std::size_t removed = 0;
  const auto out = redundancy_filter(ds, candidates, &removed);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].occurrences, k);
  EXPECT_EQ(removed, k - 1);
}

TEST(PivotNeighbourhood, FollowsAdjacentPoints) {
  // 7 points, survivors p2 and p6 (1-based).
  const std::vector<Subtrajectory> survivors{{1, 1}, {5, 1}};
  const auto next = pivot_neighbourhood(survivors, 7);
  const std::vector<Subtrajectory> expected{{0, 2}, {1, 2}, {4, 2}, {5, 2}};
  EXPECT_EQ(next, expected);

  // p2->p3 survives at size 2: size-3 neighbours use p1 and p4.
  const std::vector<Subtrajectory> size_two{{1, 2}};
  EXPECT_EQ(pivot_neighbourhood(size_two, 7), (std::vector<Subtrajectory>{{0, 3}, {1, 3}}));

  const std::vector<Subtrajectory> edges{{0, 1}, {6, 1}};
  EXPECT_EQ(pivot_neighbourhood(edges, 7), (std::vector<Subtrajectory>{{0, 2}, {5, 2}}));
}

TEST(ExtractPivots, GrowsOnlyFromSurvivors) {
  RandomDatasetOptions opt;
  opt.kinds = {DimensionKind::categorical, DimensionKind::numeric};
  opt.min_len = 6;
  opt.max_len = 12;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ds = generate_random_dataset(opt, seed);
    ExtractionConfig cfg;
    cfg.variant = ExtractionVariant::pivots;
    cfg.log_limit = false;
    const auto r = extract_pivots(ds, 0, ds.members_of(0), compute_stats(ds), cfg);
    std::set<std::tuple<std::size_t, std::size_t, std::uint32_t>> survivors;
    for (const auto& k : r.scored) {
      if (k.survived) survivors.insert({k.slice.start, k.slice.length, k.dims.mask()});
    }
    for (const auto& k : r.scored) {
      if (k.slice.length == 1) continue;
      const bool from_left = survivors.count({k.slice.start + 1, k.slice.length - 1, k.dims.mask()}) > 0;
      const bool from_right = survivors.count({k.slice.start, k.slice.length - 1, k.dims.mask()}) > 0;
      EXPECT_TRUE(from_left || from_right);
    }
    // Survivors of one size and subset never overlap.
    for (const auto& a : r.scored) {
      for (const auto& b : r.scored) {
        if (&a == &b || !a.survived || !b.survived) continue;
        if (a.slice.length != b.slice.length || a.dims != b.dims) continue;
        EXPECT_FALSE(a.slice.overlaps(b.slice));
      }
    }
    EXPECT_EQ(r.size_taus.front(), r.tau);
    EXPECT_EQ(r.best_candidates.size() + r.bucket.size() + r.duplicates_removed, r.scored.size());
  }
}

TEST(ExtractPivots, NeverGeneratesMoreThanNoPivots) {
  RandomDatasetOptions opt;
  opt.kinds = {DimensionKind::categorical, DimensionKind::numeric};
  opt.min_len = 4;
  opt.max_len = 16;
  opt.trajs_per_class = 4;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ds = generate_random_dataset(opt, 1000 + seed);
    const auto stats = compute_stats(ds);
    for (bool log_limit : {false, true}) {
      ExtractionConfig cfg;
      cfg.log_limit = log_limit;
      const auto full = extract_no_pivots(ds, 0, ds.members_of(0), stats, cfg);
      cfg.variant = ExtractionVariant::pivots;
      const auto piv = extract_pivots(ds, 0, ds.members_of(0), stats, cfg);
      EXPECT_LE(piv.candidates_generated, full.candidates_generated);
      const std::size_t n = ds.trajectory(0).size();
      EXPECT_LE(full.candidates_generated, count_candidates(n, 2, size_limit(n, log_limit)));
    }
  }
}

}  // namespace
}  // namespace movelets
