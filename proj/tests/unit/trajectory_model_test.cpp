#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "movelets/combinatorics.hpp"
#include "movelets/dataset_io.hpp"
#include "movelets/error.hpp"
#include "movelets/synthetic.hpp"
#include "oracles.hpp"

namespace movelets {
namespace {

Schema poi_schema() { return {{"poi", DimensionKind::categorical}}; }

TEST(LoadDataset, GroupsRowsByTidInFileOrder) {
  std::istringstream in(
      "tid,label,poi\n"
      "t1,A,home\n"
      "t2,B,cafe\n"
      "t1,A,work\n"
      "t2,B,gym\n"
      "t1,A,cafe\n"
      "t2,B,home\n");
  const auto ds = read_dataset(in, poi_schema());
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.trajectory(0).tid(), "t1");
  EXPECT_EQ(ds.trajectory(0).size(), 3u);
  EXPECT_EQ(ds.trajectory(1).size(), 3u);
  EXPECT_EQ(ds.format_value(ds.trajectory(0).value(1, 0), 0), "work");
  EXPECT_EQ(ds.classes(), (std::vector<std::string>{"A", "B"}));
}

TEST(LoadDataset, ParsesAllDimensionKinds) {
  std::istringstream in(
      "tid,label,loc,price,poi\n"
      "a,X,\"1.5 -2\",3.25,bar\n"
      "a,X,0 0,1,pub\n");
  const Schema schema{{"loc", DimensionKind::spatial},
                      {"price", DimensionKind::numeric},
                      {"poi", DimensionKind::categorical}};
  const auto ds = read_dataset(in, schema);
  const auto& t = ds.trajectory(0);
  EXPECT_EQ(t.value(0, 0), Value::spatial(1.5, -2));
  EXPECT_EQ(t.value(0, 1), Value::numeric(3.25));
  EXPECT_EQ(ds.dimensions()[0].kind, DimensionKind::spatial);
  EXPECT_EQ(ds.dimensions()[2].index, 2u);
}

TEST(LoadDataset, MissingValueNamesLine) {
  std::istringstream in("tid,label,poi\nt1,A,home\nt1,A,\nt1,A,x\n");
  try {
    read_dataset(in, poi_schema());
    FAIL() << "expected IngestionError";
  } catch (const IngestionError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(LoadDataset, RejectsMalformedInput) {
  std::istringstream wrong_fields("tid,label,poi\nt1,A,home,extra\n");
  EXPECT_THROW(read_dataset(wrong_fields, poi_schema()), IngestionError);

  std::istringstream bad_number("tid,label,v\nt1,A,abc\n");
  EXPECT_THROW(read_dataset(bad_number, {{"v", DimensionKind::numeric}}), IngestionError);

  std::istringstream bad_spatial("tid,label,p\nt1,A,3\n");
  EXPECT_THROW(read_dataset(bad_spatial, {{"p", DimensionKind::spatial}}), IngestionError);

  std::istringstream conflicting("tid,label,poi\nt1,A,x\nt1,B,y\n");
  EXPECT_THROW(read_dataset(conflicting, poi_schema()), IngestionError);

  std::istringstream no_header("");
  EXPECT_THROW(read_dataset(no_header, poi_schema()), IngestionError);
}

TEST(LoadDataset, HeaderMustMatchSchema) {
  std::istringstream unknown("tid,label,color\nt1,A,red\n");
  EXPECT_THROW(read_dataset(unknown, poi_schema()), SchemaError);

  std::istringstream missing("tid,label,poi\nt1,A,red\n");
  EXPECT_THROW(read_dataset(missing, {{"poi", DimensionKind::categorical},
                                      {"price", DimensionKind::numeric}}),
               SchemaError);
}

TEST(Schema, ParsesManifestAndRejectsUnknownKinds) {
  std::istringstream ok("# dims\npoi = categorical\nloc=spatial\n\nprice=numeric\n");
  const auto schema = parse_schema(ok);
  EXPECT_EQ(schema.size(), 3u);
  EXPECT_EQ(schema.at("loc"), DimensionKind::spatial);

  std::istringstream bad("poi=color\n");
  EXPECT_THROW(parse_schema(bad), SchemaError);
  std::istringstream no_eq("poi categorical\n");
  EXPECT_THROW(parse_schema(no_eq), SchemaError);
}

TEST(LoadDataset, VocabularySeedSharesSymbolIds) {
  std::istringstream train_in("tid,label,poi\nt1,A,x\nt1,A,y\n");
  const auto train = read_dataset(train_in, poi_schema());
  std::istringstream test_in("tid,label,poi\nu1,A,z\nu1,A,y\n");
  const auto test = read_dataset(test_in, poi_schema(), train.vocabulary());
  EXPECT_EQ(test.trajectory(0).value(1, 0), train.trajectory(0).value(1, 0));
  EXPECT_EQ(test.format_value(test.trajectory(0).value(0, 0), 0), "z");
}

TEST(Dataset, RejectsEmptyTrajectoriesAndDuplicates) {
  EXPECT_THROW(Trajectory("t", "A", 1, {}), ParameterError);
  std::vector<Trajectory> dup{Trajectory("t", "A", 1, {Value::numeric(1)}),
                              Trajectory("t", "B", 1, {Value::numeric(2)})};
  EXPECT_THROW(Dataset({{"v", DimensionKind::numeric, 0}}, dup, {}), SchemaError);
}

TEST(Serialization, PlantedDatasetRoundTripsByteForByte) {
  PlantedOptions extra{1, 1};
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    const auto ds = generate_planted_dataset(3, 4, 12, 3, 20, seed, extra);
    const auto text = serialize_dataset(ds);
    std::istringstream in(text);
    std::ostringstream schema_text;
    write_schema(schema_text, ds);
    std::istringstream schema_in(schema_text.str());
    const auto loaded = read_dataset(in, parse_schema(schema_in));
    EXPECT_EQ(loaded, ds);
    EXPECT_EQ(serialize_dataset(loaded), text);
  }
}

TEST(Serialization, RandomDatasetsRoundTrip) {
  RandomDatasetOptions opt;
  opt.kinds = {DimensionKind::spatial, DimensionKind::numeric, DimensionKind::categorical};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ds = generate_random_dataset(opt, seed);
    const auto text = serialize_dataset(ds);
    std::istringstream in(text);
    const Schema schema{{"d0", DimensionKind::spatial},
                        {"d1", DimensionKind::numeric},
                        {"d2", DimensionKind::categorical}};
    EXPECT_EQ(serialize_dataset(read_dataset(in, schema)), text) << "seed " << seed;
  }
}

TEST(PlantedDataset, ShapeAndDeterminism) {
  const auto a = generate_planted_dataset(2, 5, 10, 3, 50, 7);
  const auto b = generate_planted_dataset(2, 5, 10, 3, 50, 7);
  EXPECT_EQ(a.size(), 10u);
  EXPECT_EQ(serialize_dataset(a), serialize_dataset(b));
  EXPECT_NE(serialize_dataset(a), serialize_dataset(generate_planted_dataset(2, 5, 10, 3, 50, 8)));
  EXPECT_THROW(generate_planted_dataset(2, 5, 3, 4, 50, 7), ParameterError);
}

bool contains_sequence(const Dataset& ds, const Trajectory& t, const std::vector<std::string>& seq) {
  for (std::size_t s = 0; s + seq.size() <= t.size(); ++s) {
    bool match = true;
    for (std::size_t j = 0; j < seq.size() && match; ++j) {
      match = ds.format_value(t.value(s + j, 0), 0) == seq[j];
    }
    if (match) return true;
  }
  return false;
}

TEST(PlantedDataset, PatternPresentInOwnClassOnly) {
  const auto ds = generate_planted_dataset(2, 5, 10, 3, 50, 7);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto pattern = planted_pattern(c, 3);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const bool own = ds.class_of(i) == c;
      EXPECT_EQ(contains_sequence(ds, ds.trajectory(i), pattern), own);
      // no single pattern symbol leaks into another class either
      for (const auto& symbol : pattern) {
        EXPECT_EQ(contains_sequence(ds, ds.trajectory(i), {symbol}), own);
      }
    }
  }
}

TEST(StratifiedSplit, KeepsClassBalance) {
  const auto ds = generate_planted_dataset(5, 20, 20, 4, 100, 3);
  const auto split = stratified_split(ds, 0.7, 3);
  EXPECT_EQ(split.train.size(), 70u);
  EXPECT_EQ(split.test.size(), 30u);
  for (std::size_t c = 0; c < 5; ++c) EXPECT_EQ(split.train.members_of(c).size(), 14u);
}

TEST(Combinatorics, ReferenceCounts) {
  EXPECT_EQ(count_subtrajectories(10), 55u);
  EXPECT_EQ(count_candidates(10, 3), 385u);
  EXPECT_EQ(count_subtrajectories(20), 210u);
  EXPECT_EQ(count_candidates(20, 6), 13230u);
  EXPECT_EQ(log_size_limit(20), 4u);
  EXPECT_EQ(count_subtrajectories(20, 4), 74u);
  EXPECT_EQ(count_candidates(20, 6, 4), 4662u);
  EXPECT_EQ(count_subtrajectories(1), 1u);
}

TEST(Combinatorics, LogLimitEdges) {
  EXPECT_EQ(log_size_limit(1), 1u);
  EXPECT_EQ(log_size_limit(2), 1u);
  EXPECT_EQ(log_size_limit(3), 1u);
  EXPECT_EQ(log_size_limit(4), 2u);
  EXPECT_EQ(log_size_limit(1023), 9u);
  EXPECT_EQ(log_size_limit(1024), 10u);
  EXPECT_THROW(log_size_limit(0), ParameterError);
}

TEST(Combinatorics, MatchesBruteEnumeration) {
  for (std::size_t n = 1; n <= 50; ++n) {
    EXPECT_EQ(count_subtrajectories(n), n * (n + 1) / 2);
    EXPECT_EQ(count_subtrajectories(n), oracle::brute_subtrajectory_count(n, n));
    for (std::size_t m = 1; m <= n; m += 3) {
      EXPECT_EQ(count_subtrajectories(n, m), oracle::brute_subtrajectory_count(n, m));
      for (std::size_t d = 1; d <= 6; ++d) {
        EXPECT_EQ(count_candidates(n, d, m), count_subtrajectories(n, m) * ((1u << d) - 1));
      }
    }
  }
}

}  // namespace
}  // namespace movelets
