#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "movelets/discovery.hpp"
#include "movelets/distance.hpp"
#include "movelets/trajectory.hpp"

namespace movelets {

/// Trajectories x movelets table of best-alignment distances.
struct FeatureMatrix {
  std::vector<std::string> tids;
  std::vector<std::string> labels;
  std::vector<std::string> columns;
  std::vector<double> values;        // row-major, rows() * cols()
  std::vector<std::uint8_t> binary;  // 1 where the row is within the movelet's split points
  /// Value written for a trajectory the movelet cannot align to: the
  /// column maximum over the training rows.
  std::vector<double> sentinel;

  std::size_t rows() const noexcept { return tids.size(); }
  std::size_t cols() const noexcept { return columns.size(); }
  double value(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols(), cols()}; }
};

/// `source` is the dataset the movelets were discovered on; `rows` may be
/// any dataset sharing its dimensions and vocabulary (train or test).
/// Pass the training matrix as `training` when building a test matrix so
/// both share columns and sentinel values.
FeatureMatrix build_matrix(std::span<const Movelet> movelets, const Dataset& source,
                           const Dataset& rows, const NormalizationStats& stats,
                           const FeatureMatrix* training = nullptr, WorkerPool* pool = nullptr);

/// One column per (movelet, dimension) holding the raw per-dimension distance.
FeatureMatrix build_matrix_per_dimension(std::span<const Movelet> movelets, const Dataset& source,
                                         const Dataset& rows, const NormalizationStats& stats,
                                         const FeatureMatrix* training = nullptr,
                                         WorkerPool* pool = nullptr);

/// CSV with header `tid,label,<column>...`; `binary` selects the 0/1 view.
void write_matrix_csv(std::ostream& out, const FeatureMatrix& matrix, bool binary = false);
FeatureMatrix read_matrix_csv(std::istream& in);

struct Evaluation {
  double accuracy = 0.0;
  std::vector<std::string> predictions;
};

/// Labels each test row with its Euclidean-nearest training row (ties go to
/// the earlier training row).
Evaluation evaluate_1nn(const FeatureMatrix& train, const FeatureMatrix& test);

/// JSON sidecar describing each movelet: source tid, slice, dimensions,
/// point values, split points, F-Score.
void write_movelet_manifest(std::ostream& out, std::span<const Movelet> movelets,
                            const Dataset& source);

std::string movelet_column_name(std::size_t index);

}  // namespace movelets
