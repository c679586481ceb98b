#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "movelets/baseline.hpp"
#include "movelets/combinatorics.hpp"
#include "movelets/dataset_io.hpp"
#include "movelets/error.hpp"
#include "movelets/features.hpp"
#include "movelets/pipeline.hpp"
#include "movelets/synthetic.hpp"

namespace movelets::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  // count
  std::string data;
  std::string schema;
  std::size_t length = 0;
  std::size_t dims = 0;

  // synth
  std::string out_dir = ".";
  std::size_t classes = 2;
  std::size_t per_class = 10;
  std::size_t traj_len = 20;
  std::size_t pattern_len = 4;
  std::size_t vocab = 100;
  std::size_t extra_spatial = 0;
  std::size_t extra_numeric = 0;
  double train_fraction = 0.7;

  // discover
  std::string train;
  std::string test;
  std::string method = "hiper";
  bool no_log_limit = false;
  double tau = 0.9;
  std::size_t workers = WorkerPool::default_workers();
  std::uint64_t seed = 0;
  bool per_dimension = false;

  // evaluate
  std::string train_matrix;
  std::string test_matrix;
  std::string dir;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("movelets", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::info);
  if (const char* level = std::getenv("MOVELETS_LOG_LEVEL")) {
    logger->set_level(spdlog::level::from_str(level));
  }
  return logger;
}

fs::path schema_for(const std::string& explicit_schema, const std::string& data) {
  if (!explicit_schema.empty()) return explicit_schema;
  return fs::path(data).parent_path() / "schema.txt";
}

void require_file(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw CLI::ValidationError("input file not found: " + path.string());
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  writer(out);
}

int cmd_count(const Options& o, std::ostream& out) {
  auto line = [&](const std::string& name, std::size_t n, std::size_t d) {
    const auto limit = log_size_limit(n);
    out << name << ": length=" << n << " dims=" << d
        << " subtrajectories=" << count_subtrajectories(n)
        << " candidates=" << count_candidates(n, d)
        << " log_limit=" << limit
        << " log_subtrajectories=" << count_subtrajectories(n, limit)
        << " log_candidates=" << count_candidates(n, d, limit) << "\n";
  };
  if (o.data.empty()) {
    if (o.length == 0 || o.dims == 0) {
      throw CLI::ValidationError("count needs --data or both --length and --dims");
    }
    line("trajectory", o.length, o.dims);
    return 0;
  }
  const auto schema_path = schema_for(o.schema, o.data);
  require_file(o.data);
  require_file(schema_path);
  const auto dataset = load_dataset(o.data, read_schema(schema_path));
  std::uint64_t total = 0;
  std::uint64_t total_log = 0;
  for (const auto& t : dataset.trajectories()) {
    line(t.tid(), t.size(), dataset.dimension_count());
    total += count_candidates(t.size(), dataset.dimension_count());
    total_log += count_candidates(t.size(), dataset.dimension_count(), log_size_limit(t.size()));
  }
  out << "total: candidates=" << total << " log_candidates=" << total_log << "\n";
  return 0;
}

int cmd_synth(const Options& o, std::ostream& out, spdlog::logger& log) {
  PlantedOptions extra{o.extra_spatial, o.extra_numeric};
  const auto full = generate_planted_dataset(o.classes, o.per_class, o.traj_len, o.pattern_len,
                                             o.vocab, o.seed, extra);
  const auto split = stratified_split(full, o.train_fraction, o.seed);
  fs::create_directories(o.out_dir);
  const fs::path dir(o.out_dir);
  save_dataset(dir / "train.csv", split.train);
  save_dataset(dir / "test.csv", split.test);
  write_file(dir / "schema.txt", [&](std::ostream& s) { write_schema(s, full); });
  log.info("wrote {} train and {} test trajectories to {}", split.train.size(), split.test.size(),
           dir.string());
  out << "train=" << (dir / "train.csv").string() << "\n"
      << "test=" << (dir / "test.csv").string() << "\n"
      << "schema=" << (dir / "schema.txt").string() << "\n";
  return 0;
}

int cmd_discover(const Options& o, std::ostream& out, spdlog::logger& log) {
  const auto schema_path = schema_for(o.schema, o.train);
  require_file(o.train);
  require_file(schema_path);
  if (!o.test.empty()) require_file(o.test);
  const auto schema = read_schema(schema_path);
  const auto train = load_dataset(o.train, schema);
  log.info("loaded {} training trajectories, {} classes", train.size(), train.classes().size());

  RunResult result;
  if (o.method == "exhaustive") {
    result = run_exhaustive(train, {!o.no_log_limit, o.workers, o.seed});
  } else {
    RunConfig cfg;
    cfg.extraction.variant =
        o.method == "hiper-pivots" ? ExtractionVariant::pivots : ExtractionVariant::no_pivots;
    cfg.extraction.log_limit = !o.no_log_limit;
    cfg.extraction.tau_factor = o.tau;
    cfg.workers = o.workers;
    cfg.seed = o.seed;
    result = run(train, cfg);
  }
  log.info("{} movelets in {:.3f}s", result.movelets.size(), result.report.wall_seconds);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  write_file(dir / "report.txt", [&](std::ostream& s) { write_report_text(s, result.report); });
  write_file(dir / "report.kv", [&](std::ostream& s) { write_report_kv(s, result.report); });
  write_file(dir / "movelets.json",
             [&](std::ostream& s) { write_movelet_manifest(s, result.movelets, train); });
  write_report_text(out, result.report);
  if (result.movelets.empty()) {
    throw Error("discovery produced no movelets; no feature matrices written");
  }

  const auto stats = compute_stats(train, o.seed);
  WorkerPool pool(o.workers);
  const auto train_m = build_matrix(result.movelets, train, train, stats, nullptr, &pool);
  write_file(dir / "train_features.csv", [&](std::ostream& s) { write_matrix_csv(s, train_m); });
  write_file(dir / "train_binary.csv", [&](std::ostream& s) { write_matrix_csv(s, train_m, true); });
  std::optional<FeatureMatrix> train_pd;
  if (o.per_dimension) {
    train_pd = build_matrix_per_dimension(result.movelets, train, train, stats, nullptr, &pool);
    write_file(dir / "train_features_per_dimension.csv",
               [&](std::ostream& s) { write_matrix_csv(s, *train_pd); });
  }
  if (!o.test.empty()) {
    const auto test = load_dataset(o.test, schema, train.vocabulary());
    const auto test_m = build_matrix(result.movelets, train, test, stats, &train_m, &pool);
    write_file(dir / "test_features.csv", [&](std::ostream& s) { write_matrix_csv(s, test_m); });
    write_file(dir / "test_binary.csv", [&](std::ostream& s) { write_matrix_csv(s, test_m, true); });
    if (train_pd) {
      const auto test_pd =
          build_matrix_per_dimension(result.movelets, train, test, stats, &*train_pd, &pool);
      write_file(dir / "test_features_per_dimension.csv",
                 [&](std::ostream& s) { write_matrix_csv(s, test_pd); });
    }
  }
  out << "movelets=" << result.movelets.size() << "\n"
      << "output=" << dir.string() << "\n";
  return 0;
}

FeatureMatrix read_matrix(const fs::path& path) {
  require_file(path);
  std::ifstream in(path);
  return read_matrix_csv(in);
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  fs::path train_path = o.train_matrix;
  fs::path test_path = o.test_matrix;
  if (!o.dir.empty()) {
    if (train_path.empty()) train_path = fs::path(o.dir) / "train_features.csv";
    if (test_path.empty()) test_path = fs::path(o.dir) / "test_features.csv";
  }
  if (train_path.empty() || test_path.empty()) {
    throw CLI::ValidationError("evaluate needs --dir or both --train-matrix and --test-matrix");
  }
  const auto train = read_matrix(train_path);
  const auto test = read_matrix(test_path);
  const auto ev = evaluate_1nn(train, test);
  out << "rows=" << test.rows() << " columns=" << test.cols() << "\n";
  out << "accuracy=" << ev.accuracy << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discriminative subtrajectory (movelet) extraction for labeled trajectories"};
  app.require_subcommand(1);
  Options o;

  auto positive = CLI::PositiveNumber;
  auto* count = app.add_subcommand("count", "Closed-form candidate counts for a dataset or a length");
  count->add_option("--data", o.data, "Dataset CSV");
  count->add_option("--schema", o.schema, "Schema manifest (default: schema.txt next to --data)");
  count->add_option("--length", o.length, "Trajectory length")->check(positive);
  count->add_option("--dims", o.dims, "Dimension count")->check(CLI::Range(1, 63));

  auto* synth = app.add_subcommand("synth", "Write a planted-pattern train/test fixture");
  synth->add_option("--out", o.out_dir, "Output directory");
  synth->add_option("--classes", o.classes, "Number of classes")->check(positive);
  synth->add_option("--per-class", o.per_class, "Trajectories per class")->check(positive);
  synth->add_option("--length", o.traj_len, "Trajectory length")->check(positive);
  synth->add_option("--pattern", o.pattern_len, "Planted pattern length")->check(positive);
  synth->add_option("--vocab", o.vocab, "Noise vocabulary size")->check(positive);
  synth->add_option("--spatial", o.extra_spatial, "Extra spatial noise dimensions");
  synth->add_option("--numeric", o.extra_numeric, "Extra numeric noise dimensions");
  synth->add_option("--train-fraction", o.train_fraction, "Hold-out train fraction")
      ->check(CLI::Range(0.01, 0.99));
  synth->add_option("--seed", o.seed, "Random seed");

  auto* discover = app.add_subcommand("discover", "Discover movelets and write feature matrices");
  discover->add_option("--train", o.train, "Training CSV")->required();
  discover->add_option("--test", o.test, "Test CSV");
  discover->add_option("--schema", o.schema, "Schema manifest (default: schema.txt next to --train)");
  discover->add_option("--method", o.method, "hiper | hiper-pivots | exhaustive")
      ->check(CLI::IsMember({"hiper", "hiper-pivots", "exhaustive"}));
  discover->add_flag("--no-log-limit", o.no_log_limit, "Consider candidates of every size");
  discover->add_option("--tau", o.tau, "Tau factor in (0, 1]")
      ->check(CLI::Validator(
          [](const std::string& s) -> std::string {
            double v = 0.0;
            std::istringstream in(s);
            if (!(in >> v) || !(v > 0.0 && v <= 1.0)) return "tau must be in (0, 1]";
            return {};
          },
          "(0,1]"));
  discover->add_option("--out", o.out_dir, "Output directory");
  discover->add_option("--workers", o.workers, "Worker threads")->check(positive);
  discover->add_option("--seed", o.seed, "Seed for sampled normalization statistics");
  discover->add_flag("--per-dimension", o.per_dimension, "Also export per-dimension features");

  auto* evaluate = app.add_subcommand("evaluate", "1-NN accuracy on exported feature matrices");
  evaluate->add_option("--dir", o.dir, "Directory written by discover");
  evaluate->add_option("--train-matrix", o.train_matrix, "Training feature CSV");
  evaluate->add_option("--test-matrix", o.test_matrix, "Test feature CSV");

  auto logger = make_logger(err);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*count) return cmd_count(o, out);
    if (*synth) return cmd_synth(o, out, *logger);
    if (*discover) return cmd_discover(o, out, *logger);
    if (*evaluate) return cmd_evaluate(o, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const Error& e) {
    logger->error("{}", e.what());
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    logger->error("{}", e.what());
    return kRuntimeFailure;
  }
  return kUsageError;
}

}  // namespace movelets::cli
