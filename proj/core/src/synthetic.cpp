#include "movelets/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "movelets/error.hpp"

namespace movelets {

std::vector<std::string> planted_pattern(std::size_t class_index, std::size_t pattern_len) {
  std::vector<std::string> out;
  out.reserve(pattern_len);
  for (std::size_t j = 0; j < pattern_len; ++j) {
    out.push_back("c" + std::to_string(class_index) + "_p" + std::to_string(j));
  }
  return out;
}

Dataset generate_planted_dataset(std::size_t n_classes, std::size_t trajs_per_class,
                                 std::size_t traj_len, std::size_t pattern_len,
                                 std::size_t noise_vocab, std::uint64_t seed,
                                 const PlantedOptions& options) {
  if (pattern_len > traj_len) throw ParameterError("pattern_len must not exceed traj_len");
  if (pattern_len == 0) throw ParameterError("pattern_len must be at least 1");
  if (n_classes == 0 || trajs_per_class == 0) {
    throw ParameterError("need at least one class and one trajectory per class");
  }
  if (noise_vocab == 0 && pattern_len < traj_len) {
    throw ParameterError("noise_vocab must be positive when trajectories have noise points");
  }

  std::vector<DimensionDescriptor> dims{{"poi", DimensionKind::categorical, 0}};
  for (std::size_t s = 0; s < options.extra_spatial; ++s) {
    dims.push_back({"space" + std::to_string(s), DimensionKind::spatial, dims.size()});
  }
  for (std::size_t n = 0; n < options.extra_numeric; ++n) {
    dims.push_back({"value" + std::to_string(n), DimensionKind::numeric, dims.size()});
  }
  const std::size_t width = dims.size();

  Vocabulary vocab(width);
  std::vector<std::vector<std::int32_t>> patterns(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (const auto& name : planted_pattern(c, pattern_len)) {
      patterns[c].push_back(vocab[0].intern(name));
    }
  }
  std::vector<std::int32_t> noise;
  for (std::size_t v = 0; v < noise_vocab; ++v) {
    noise.push_back(vocab[0].intern("n" + std::to_string(v)));
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_noise(0, noise_vocab == 0 ? 0 : noise_vocab - 1);
  std::uniform_int_distribution<std::size_t> pick_offset(0, traj_len - pattern_len);
  std::uniform_int_distribution<int> coordinate(0, 999);
  std::uniform_int_distribution<int> amount(0, 99);

  std::vector<Trajectory> trajectories;
  trajectories.reserve(n_classes * trajs_per_class);
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (std::size_t t = 0; t < trajs_per_class; ++t) {
      std::vector<Value> values(traj_len * width);
      for (std::size_t i = 0; i < traj_len; ++i) {
        values[i * width] = Value::symbol(noise.empty() ? 0 : noise[pick_noise(rng)]);
        for (std::size_t k = 1; k < width; ++k) {
          if (dims[k].kind == DimensionKind::spatial) {
            const double x = coordinate(rng);
            const double y = coordinate(rng);
            values[i * width + k] = Value::spatial(x, y);
          } else {
            values[i * width + k] = Value::numeric(amount(rng));
          }
        }
      }
      const std::size_t offset = pick_offset(rng);
      for (std::size_t j = 0; j < pattern_len; ++j) {
        values[(offset + j) * width] = Value::symbol(patterns[c][j]);
      }
      trajectories.emplace_back("c" + std::to_string(c) + "_t" + std::to_string(t),
                                "class" + std::to_string(c), width, std::move(values));
    }
  }
  return Dataset(std::move(dims), std::move(trajectories), std::move(vocab));
}

Dataset generate_random_dataset(const RandomDatasetOptions& options, std::uint64_t seed) {
  if (options.kinds.empty()) throw ParameterError("at least one dimension kind is required");
  if (options.min_len == 0 || options.min_len > options.max_len) {
    throw ParameterError("need 1 <= min_len <= max_len");
  }
  if (options.vocab == 0 || options.numeric_levels <= 0) {
    throw ParameterError("vocab and numeric_levels must be positive");
  }
  const std::size_t width = options.kinds.size();
  std::vector<DimensionDescriptor> dims;
  Vocabulary vocab(width);
  for (std::size_t k = 0; k < width; ++k) {
    dims.push_back({"d" + std::to_string(k), options.kinds[k], k});
    if (options.kinds[k] == DimensionKind::categorical) {
      for (std::size_t v = 0; v < options.vocab; ++v) vocab[k].intern("s" + std::to_string(v));
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_len(options.min_len, options.max_len);
  std::uniform_int_distribution<std::int32_t> pick_symbol(
      0, static_cast<std::int32_t>(options.vocab) - 1);
  std::uniform_int_distribution<std::int32_t> pick_level(0, options.numeric_levels - 1);

  std::vector<Trajectory> trajectories;
  for (std::size_t c = 0; c < options.n_classes; ++c) {
    for (std::size_t t = 0; t < options.trajs_per_class; ++t) {
      const std::size_t len = pick_len(rng);
      std::vector<Value> values;
      values.reserve(len * width);
      for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t k = 0; k < width; ++k) {
          switch (options.kinds[k]) {
            case DimensionKind::categorical:
              values.push_back(Value::symbol(pick_symbol(rng)));
              break;
            case DimensionKind::numeric:
              values.push_back(Value::numeric(pick_level(rng)));
              break;
            case DimensionKind::spatial: {
              const double x = pick_level(rng);
              const double y = pick_level(rng);
              values.push_back(Value::spatial(x, y));
              break;
            }
          }
        }
      }
      trajectories.emplace_back("r" + std::to_string(c) + "_" + std::to_string(t),
                                "L" + std::to_string(c), width, std::move(values));
    }
  }
  return Dataset(std::move(dims), std::move(trajectories), std::move(vocab));
}

HoldoutSplit stratified_split(const Dataset& dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParameterError("train_fraction must be in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t c = 0; c < dataset.classes().size(); ++c) {
    auto members = dataset.members_of(c);
    std::shuffle(members.begin(), members.end(), rng);
    auto n_train = static_cast<std::size_t>(std::lround(train_fraction * members.size()));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size());
    train_idx.insert(train_idx.end(), members.begin(), members.begin() + n_train);
    test_idx.insert(test_idx.end(), members.begin() + n_train, members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {dataset.select(train_idx), dataset.select(test_idx)};
}

}  // namespace movelets
