#include "movelets/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "movelets/error.hpp"

namespace movelets {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(DimensionKind kind) {
  switch (kind) {
    case DimensionKind::spatial: return "spatial";
    case DimensionKind::numeric: return "numeric";
    case DimensionKind::categorical: return "categorical";
  }
  return "unknown";
}

DimensionKind parse_dimension_kind(std::string_view text) {
  if (text == "spatial") return DimensionKind::spatial;
  if (text == "numeric") return DimensionKind::numeric;
  if (text == "categorical") return DimensionKind::categorical;
  throw SchemaError("unknown dimension kind '" + std::string(text) + "'");
}

Trajectory::Trajectory(std::string tid, std::string label, std::size_t dimension_count,
                       std::vector<Value> values)
    : tid_(std::move(tid)), label_(std::move(label)), dimension_count_(dimension_count),
      values_(std::move(values)) {
  if (dimension_count_ == 0) throw ParameterError("trajectory needs at least one dimension");
  if (values_.empty() || values_.size() % dimension_count_ != 0) {
    throw ParameterError("trajectory '" + tid_ + "' must have at least one complete point");
  }
  size_ = values_.size() / dimension_count_;
}

std::int32_t SymbolTable::intern(std::string_view name) {
  std::string key(name);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  auto id = static_cast<std::int32_t>(names_.size());
  names_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<std::int32_t> SymbolTable::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

Dataset::Dataset(std::vector<DimensionDescriptor> dimensions, std::vector<Trajectory> trajectories,
                 Vocabulary vocabulary)
    : dimensions_(std::move(dimensions)), trajectories_(std::move(trajectories)),
      vocabulary_(std::move(vocabulary)) {
  std::set<std::string> names;
  for (std::size_t k = 0; k < dimensions_.size(); ++k) {
    if (!names.insert(dimensions_[k].name).second) {
      throw SchemaError("duplicate dimension name '" + dimensions_[k].name + "'");
    }
    dimensions_[k].index = k;
  }
  vocabulary_.resize(dimensions_.size());

  std::set<std::string> tids;
  class_index_.reserve(trajectories_.size());
  for (std::size_t i = 0; i < trajectories_.size(); ++i) {
    const auto& t = trajectories_[i];
    if (t.dimension_count() != dimensions_.size()) {
      throw SchemaError("trajectory '" + t.tid() + "' does not match the dimension set");
    }
    if (!tids.insert(t.tid()).second) {
      throw SchemaError("duplicate trajectory id '" + t.tid() + "'");
    }
    auto found = find_class(t.label());
    std::size_t c = 0;
    if (found) {
      c = *found;
    } else {
      c = classes_.size();
      classes_.push_back(t.label());
      members_.emplace_back();
    }
    class_index_.push_back(c);
    members_[c].push_back(i);
  }
}

std::optional<std::size_t> Dataset::find_class(std::string_view label) const {
  auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  std::vector<Trajectory> picked;
  picked.reserve(indices.size());
  for (auto i : indices) picked.push_back(trajectories_.at(i));
  return Dataset(dimensions_, std::move(picked), vocabulary_);
}

std::string Dataset::format_value(const Value& v, std::size_t dim) const {
  switch (dimensions_.at(dim).kind) {
    case DimensionKind::categorical: return vocabulary_.at(dim).name(v.symbol_id());
    case DimensionKind::numeric: return format_double(v.x);
    case DimensionKind::spatial: return format_double(v.x) + " " + format_double(v.y);
  }
  return {};
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.dimensions_ != b.dimensions_ || a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const auto& ta = a.trajectories_[t];
    const auto& tb = b.trajectories_[t];
    if (ta.tid() != tb.tid() || ta.label() != tb.label() || ta.size() != tb.size()) return false;
    for (std::size_t i = 0; i < ta.size(); ++i) {
      for (std::size_t k = 0; k < a.dimension_count(); ++k) {
        const auto& va = ta.value(i, k);
        const auto& vb = tb.value(i, k);
        if (a.dimensions_[k].kind == DimensionKind::categorical) {
          if (a.vocabulary_.at(k).name(va.symbol_id()) != b.vocabulary_.at(k).name(vb.symbol_id())) {
            return false;
          }
        } else if (va != vb) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace movelets
