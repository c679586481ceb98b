#include "movelets/features.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "movelets/error.hpp"
#include "movelets/parallel.hpp"

namespace movelets {

namespace {

void check_compatible(const Dataset& source, const Dataset& rows) {
  if (source.dimensions() != rows.dimensions()) {
    throw ParameterError("feature rows must share the movelets' dimension set");
  }
}

void for_each(std::size_t n, WorkerPool* pool, const std::function<void(std::size_t)>& fn) {
  if (pool != nullptr) {
    pool->parallel_for(n, fn);
  } else {
    for (std::size_t i = 0; i < n; ++i) fn(i);
  }
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

/// Fills sentinel values and returns the matrix with not-containable cells
/// resolved. `missing` marks cells that had no alignment.
void resolve_sentinels(FeatureMatrix& m, const std::vector<std::uint8_t>& missing,
                       const FeatureMatrix* training) {
  const std::size_t cols = m.cols();
  if (training != nullptr) {
    if (training->cols() != cols) throw ParameterError("training matrix has a different column count");
    m.sentinel = training->sentinel;
  } else {
    m.sentinel.assign(cols, 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (!missing[r * cols + c]) m.sentinel[c] = std::max(m.sentinel[c], m.values[r * cols + c]);
      }
    }
  }
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    if (missing[i]) m.values[i] = m.sentinel[i % cols];
  }
}

FeatureMatrix empty_matrix(std::span<const Movelet> movelets, const Dataset& rows) {
  if (movelets.empty()) {
    throw ParameterError("no movelets to build features from; discovery produced nothing");
  }
  FeatureMatrix m;
  for (const auto& t : rows.trajectories()) {
    m.tids.push_back(t.tid());
    m.labels.push_back(t.label());
  }
  return m;
}

}  // namespace

std::string movelet_column_name(std::size_t index) { return "movelet_" + std::to_string(index + 1); }

FeatureMatrix build_matrix(std::span<const Movelet> movelets, const Dataset& source,
                           const Dataset& rows, const NormalizationStats& stats,
                           const FeatureMatrix* training, WorkerPool* pool) {
  check_compatible(source, rows);
  auto m = empty_matrix(movelets, rows);
  for (std::size_t c = 0; c < movelets.size(); ++c) m.columns.push_back(movelet_column_name(c));
  const std::size_t cols = m.cols();
  m.values.assign(m.rows() * cols, 0.0);
  m.binary.assign(m.rows() * cols, 0);
  std::vector<std::uint8_t> missing(m.rows() * cols, 0);

  for_each(cols, pool, [&](std::size_t c) {
    const auto& mv = movelets[c];
    const auto& src = source.trajectory(mv.source());
    const double threshold = stats.aggregate(mv.split_points, mv.dims());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const auto d = best_alignment(src, mv.slice(), rows.trajectory(r), source.dimensions(),
                                    mv.dims(), stats);
      const double v = stats.aggregate(d, mv.dims());
      const std::size_t i = r * cols + c;
      if (v == kNotContainable) {
        missing[i] = 1;
      } else {
        m.values[i] = v;
        m.binary[i] = v <= threshold ? 1 : 0;
      }
    }
  });
  resolve_sentinels(m, missing, training);
  return m;
}

FeatureMatrix build_matrix_per_dimension(std::span<const Movelet> movelets, const Dataset& source,
                                         const Dataset& rows, const NormalizationStats& stats,
                                         const FeatureMatrix* training, WorkerPool* pool) {
  check_compatible(source, rows);
  auto m = empty_matrix(movelets, rows);
  std::vector<std::size_t> first_column;
  for (std::size_t c = 0; c < movelets.size(); ++c) {
    first_column.push_back(m.columns.size());
    for (auto k : movelets[c].dims().indices()) {
      m.columns.push_back(movelet_column_name(c) + "." + source.dimensions()[k].name);
    }
  }
  const std::size_t cols = m.cols();
  m.values.assign(m.rows() * cols, 0.0);
  m.binary.assign(m.rows() * cols, 0);
  std::vector<std::uint8_t> missing(m.rows() * cols, 0);

  for_each(movelets.size(), pool, [&](std::size_t c) {
    const auto& mv = movelets[c];
    const auto& src = source.trajectory(mv.source());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const auto d = best_alignment(src, mv.slice(), rows.trajectory(r), source.dimensions(),
                                    mv.dims(), stats);
      for (std::size_t j = 0; j < d.values.size(); ++j) {
        const std::size_t i = r * cols + first_column[c] + j;
        if (!d.containable()) {
          missing[i] = 1;
        } else {
          m.values[i] = d.values[j];
          m.binary[i] = d.values[j] <= mv.split_points[j] ? 1 : 0;
        }
      }
    }
  });
  resolve_sentinels(m, missing, training);
  return m;
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& matrix, bool binary) {
  out << "tid,label";
  for (const auto& c : matrix.columns) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out << matrix.tids[r] << ',' << matrix.labels[r];
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      out << ',';
      if (binary) {
        out << static_cast<int>(matrix.binary[r * matrix.cols() + c]);
      } else {
        out << format_number(matrix.value(r, c));
      }
    }
    out << '\n';
  }
}

FeatureMatrix read_matrix_csv(std::istream& in) {
  FeatureMatrix m;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw IngestionError("empty feature matrix");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "tid" || header[1] != "label") {
    throw IngestionError("feature matrix header must start with tid,label", 1);
  }
  m.columns.assign(header.begin() + 2, header.end());
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw IngestionError("expected " + std::to_string(header.size()) + " fields", line_no);
    }
    m.tids.push_back(fields[0]);
    m.labels.push_back(fields[1]);
    for (std::size_t c = 2; c < fields.size(); ++c) {
      double v = 0.0;
      const auto& f = fields[c];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw IngestionError("invalid number '" + f + "'", line_no);
      }
      m.values.push_back(v);
    }
  }
  return m;
}

Evaluation evaluate_1nn(const FeatureMatrix& train, const FeatureMatrix& test) {
  if (train.rows() == 0) throw ParameterError("training matrix is empty");
  if (test.rows() == 0) throw ParameterError("test matrix is empty");
  if (train.columns != test.columns) {
    throw ParameterError("train and test matrices must share the same columns");
  }
  Evaluation ev;
  std::size_t correct = 0;
  for (std::size_t t = 0; t < test.rows(); ++t) {
    const auto q = test.row(t);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const auto p = train.row(r);
      double d = 0.0;
      for (std::size_t c = 0; c < p.size(); ++c) d += (p[c] - q[c]) * (p[c] - q[c]);
      if (d < best_d) {
        best_d = d;
        best = r;
      }
    }
    ev.predictions.push_back(train.labels[best]);
    if (train.labels[best] == test.labels[t]) ++correct;
  }
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(test.rows());
  return ev;
}

void write_movelet_manifest(std::ostream& out, std::span<const Movelet> movelets,
                            const Dataset& source) {
  nlohmann::ordered_json doc;
  doc["dimensions"] = nlohmann::ordered_json::array();
  for (const auto& d : source.dimensions()) {
    doc["dimensions"].push_back({{"name", d.name}, {"kind", std::string(to_string(d.kind))}});
  }
  auto& list = doc["movelets"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < movelets.size(); ++i) {
    const auto& m = movelets[i];
    const auto& t = source.trajectory(m.source());
    const auto members = m.dims().indices();
    nlohmann::ordered_json entry;
    entry["id"] = movelet_column_name(i);
    entry["source_tid"] = t.tid();
    entry["label"] = t.label();
    entry["start"] = m.slice().start;
    entry["end"] = m.slice().end();
    auto& dims = entry["dimensions"] = nlohmann::ordered_json::array();
    for (auto k : members) dims.push_back(source.dimensions()[k].name);
    auto& points = entry["values"] = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.slice().length; ++j) {
      nlohmann::ordered_json point = nlohmann::ordered_json::array();
      for (auto k : members) point.push_back(source.format_value(t.value(m.slice().start + j, k), k));
      points.push_back(std::move(point));
    }
    entry["split_points"] = m.split_points;
    entry["fscore"] = m.fscore;
    entry["frequency"] = m.candidate.frequency;
    entry["occurrences"] = m.candidate.occurrences;
    auto& covered = entry["covered"] = nlohmann::ordered_json::array();
    for (auto c : m.covered_dataset) covered.push_back(source.trajectory(c).tid());
    list.push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace movelets
