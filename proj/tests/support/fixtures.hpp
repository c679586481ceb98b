#pragma once

#include <string>
#include <utility>
#include <vector>

#include "movelets/trajectory.hpp"

namespace movelets::testing {

struct CategoricalRow {
  std::string tid;
  std::string label;
  std::vector<std::string> symbols;
};

/// Dataset with a single categorical dimension `poi`.
inline Dataset categorical_dataset(const std::vector<CategoricalRow>& rows) {
  Vocabulary vocab(1);
  std::vector<Trajectory> trajectories;
  for (const auto& row : rows) {
    std::vector<Value> values;
    for (const auto& s : row.symbols) values.push_back(Value::symbol(vocab[0].intern(s)));
    trajectories.emplace_back(row.tid, row.label, 1, std::move(values));
  }
  return Dataset({{"poi", DimensionKind::categorical, 0}}, std::move(trajectories),
                 std::move(vocab));
}

/// Dataset with a single numeric dimension `v`.
inline Dataset numeric_dataset(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows,
    const std::vector<std::string>& labels) {
  std::vector<Trajectory> trajectories;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Value> values;
    for (double v : rows[i].second) values.push_back(Value::numeric(v));
    trajectories.emplace_back(rows[i].first, labels[i], 1, std::move(values));
  }
  return Dataset({{"v", DimensionKind::numeric, 0}}, std::move(trajectories), Vocabulary(1));
}

inline std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace movelets::testing
