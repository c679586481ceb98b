#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace movelets {

enum class DimensionKind { spatial, numeric, categorical };

std::string_view to_string(DimensionKind kind);
/// Throws SchemaError for anything other than spatial|numeric|categorical.
DimensionKind parse_dimension_kind(std::string_view text);

struct DimensionDescriptor {
  std::string name;
  DimensionKind kind = DimensionKind::numeric;
  std::size_t index = 0;

  friend bool operator==(const DimensionDescriptor&, const DimensionDescriptor&) = default;
};

/// One dimension's value at one point. Interpretation depends on the kind:
/// spatial uses (x, y), numeric uses x, categorical stores the interned
/// symbol id in x.
struct Value {
  double x = 0.0;
  double y = 0.0;

  static Value numeric(double v) { return {v, 0.0}; }
  static Value spatial(double x, double y) { return {x, y}; }
  static Value symbol(std::int32_t id) { return {static_cast<double>(id), 0.0}; }

  std::int32_t symbol_id() const { return static_cast<std::int32_t>(x); }

  friend bool operator==(const Value&, const Value&) = default;
};

using Point = std::span<const Value>;

/// Contiguous slice [start, start + length) of a trajectory.
struct Subtrajectory {
  std::size_t start = 0;
  std::size_t length = 1;

  std::size_t end() const noexcept { return start + length - 1; }  // inclusive
  bool overlaps(const Subtrajectory& other) const noexcept {
    return start <= other.end() && other.start <= end();
  }

  friend bool operator==(const Subtrajectory&, const Subtrajectory&) = default;
  friend auto operator<=>(const Subtrajectory&, const Subtrajectory&) = default;
};

class Trajectory {
 public:
  Trajectory() = default;
  /// `values` is row-major: point i, dimension k at [i * dimension_count + k].
  Trajectory(std::string tid, std::string label, std::size_t dimension_count,
             std::vector<Value> values);

  const std::string& tid() const noexcept { return tid_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t dimension_count() const noexcept { return dimension_count_; }

  Point point(std::size_t i) const {
    return {values_.data() + i * dimension_count_, dimension_count_};
  }
  const Value& value(std::size_t i, std::size_t dim) const {
    return values_[i * dimension_count_ + dim];
  }
  std::span<const Value> raw_values() const noexcept { return values_; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::string tid_;
  std::string label_;
  std::size_t dimension_count_ = 0;
  std::size_t size_ = 0;
  std::vector<Value> values_;
};

/// Interns the categorical values of one dimension.
class SymbolTable {
 public:
  std::int32_t intern(std::string_view name);
  std::optional<std::int32_t> find(std::string_view name) const;
  const std::string& name(std::int32_t id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const noexcept { return names_.size(); }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::int32_t> ids_;
};

/// One SymbolTable per dimension (unused for non-categorical dimensions).
using Vocabulary = std::vector<SymbolTable>;

/// Dimension kinds keyed by column name.
using Schema = std::map<std::string, DimensionKind>;

/// Immutable after construction; safe to share across threads.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<DimensionDescriptor> dimensions, std::vector<Trajectory> trajectories,
          Vocabulary vocabulary);

  const std::vector<DimensionDescriptor>& dimensions() const noexcept { return dimensions_; }
  std::size_t dimension_count() const noexcept { return dimensions_.size(); }
  const std::vector<Trajectory>& trajectories() const noexcept { return trajectories_; }
  const Trajectory& trajectory(std::size_t i) const { return trajectories_.at(i); }
  std::size_t size() const noexcept { return trajectories_.size(); }
  bool empty() const noexcept { return trajectories_.empty(); }
  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }

  /// Distinct labels in first-appearance order.
  const std::vector<std::string>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t trajectory_index) const { return class_index_.at(trajectory_index); }
  /// Trajectory indices of one class, in dataset order.
  const std::vector<std::size_t>& members_of(std::size_t class_index) const {
    return members_.at(class_index);
  }
  std::optional<std::size_t> find_class(std::string_view label) const;

  /// Subset of trajectories with the same dimensions and vocabulary.
  Dataset select(std::span<const std::size_t> indices) const;

  /// Human readable value, e.g. "cafe", "3.5", "1 2".
  std::string format_value(const Value& v, std::size_t dim) const;

  /// Same dimensions and trajectories; categorical values compare by symbol
  /// name, so datasets with differently ordered vocabularies can be equal.
  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::vector<DimensionDescriptor> dimensions_;
  std::vector<Trajectory> trajectories_;
  Vocabulary vocabulary_;
  std::vector<std::string> classes_;
  std::vector<std::size_t> class_index_;
  std::vector<std::vector<std::size_t>> members_;
};

}  // namespace movelets
