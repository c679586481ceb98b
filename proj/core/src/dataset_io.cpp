#include "movelets/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "movelets/error.hpp"

namespace movelets {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw IngestionError("unterminated quoted field", line_no);
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

double parse_number(std::string_view text, std::size_t line_no, const std::string& dim) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw IngestionError("invalid number '" + std::string(text) + "' for dimension '" + dim + "'",
                         line_no);
  }
  return v;
}

Value parse_spatial(std::string_view text, std::size_t line_no, const std::string& dim) {
  text = trim(text);
  const auto sep = text.find_first_of(" \t");
  if (sep == std::string_view::npos) {
    throw IngestionError("spatial value for '" + dim + "' must be \"x y\"", line_no);
  }
  const double x = parse_number(text.substr(0, sep), line_no, dim);
  const double y = parse_number(text.substr(sep + 1), line_no, dim);
  return Value::spatial(x, y);
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_field(std::ostream& out, std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\n") != std::string_view::npos ||
                            (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

struct PendingTrajectory {
  std::string tid;
  std::string label;
  std::vector<Value> values;
};

}  // namespace

Schema parse_schema(std::istream& in) {
  Schema schema;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw SchemaError("schema line " + std::to_string(line_no) + ": expected name=kind");
    }
    const std::string name(trim(text.substr(0, eq)));
    if (name.empty()) {
      throw SchemaError("schema line " + std::to_string(line_no) + ": empty dimension name");
    }
    const auto kind = parse_dimension_kind(trim(text.substr(eq + 1)));
    if (!schema.emplace(name, kind).second) {
      throw SchemaError("schema declares dimension '" + name + "' twice");
    }
  }
  return schema;
}

Schema read_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open schema file " + path.string());
  return parse_schema(in);
}

void write_schema(std::ostream& out, const Dataset& dataset) {
  for (const auto& d : dataset.dimensions()) out << d.name << '=' << to_string(d.kind) << '\n';
}

Dataset read_dataset(std::istream& in, const Schema& schema, const Vocabulary& vocabulary) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv_line(line, line_no);
      break;
    }
  }
  if (header.empty()) throw IngestionError("missing header row");
  if (header.size() < 3 || header[0] != "tid" || header[1] != "label") {
    throw IngestionError("header must start with tid,label followed by dimensions", line_no);
  }

  std::vector<DimensionDescriptor> dims;
  for (std::size_t c = 2; c < header.size(); ++c) {
    auto it = schema.find(header[c]);
    if (it == schema.end()) {
      throw SchemaError("column '" + header[c] + "' is not declared in the schema");
    }
    dims.push_back({header[c], it->second, c - 2});
  }
  if (dims.size() != schema.size()) {
    for (const auto& [name, kind] : schema) {
      bool present = false;
      for (const auto& d : dims) present = present || d.name == name;
      if (!present) throw SchemaError("schema dimension '" + name + "' missing from header");
    }
  }

  Vocabulary vocab = vocabulary;
  vocab.resize(dims.size());
  std::vector<PendingTrajectory> pending;
  std::map<std::string, std::size_t> by_tid;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line, line_no);
    if (fields.size() != header.size()) {
      throw IngestionError("expected " + std::to_string(header.size()) + " fields, found " +
                               std::to_string(fields.size()),
                           line_no);
    }
    if (fields[0].empty()) throw IngestionError("missing tid", line_no);
    if (fields[1].empty()) throw IngestionError("missing label", line_no);

    auto [it, inserted] = by_tid.emplace(fields[0], pending.size());
    if (inserted) pending.push_back({fields[0], fields[1], {}});
    auto& traj = pending[it->second];
    if (traj.label != fields[1]) {
      throw IngestionError("trajectory '" + fields[0] + "' has conflicting labels '" +
                               traj.label + "' and '" + fields[1] + "'",
                           line_no);
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto& field = fields[k + 2];
      if (field.empty()) {
        throw IngestionError("missing value for dimension '" + dims[k].name + "'", line_no);
      }
      switch (dims[k].kind) {
        case DimensionKind::categorical:
          traj.values.push_back(Value::symbol(vocab[k].intern(field)));
          break;
        case DimensionKind::numeric:
          traj.values.push_back(Value::numeric(parse_number(field, line_no, dims[k].name)));
          break;
        case DimensionKind::spatial:
          traj.values.push_back(parse_spatial(field, line_no, dims[k].name));
          break;
      }
    }
  }

  std::vector<Trajectory> trajectories;
  trajectories.reserve(pending.size());
  for (auto& p : pending) {
    trajectories.emplace_back(std::move(p.tid), std::move(p.label), dims.size(),
                              std::move(p.values));
  }
  return Dataset(std::move(dims), std::move(trajectories), std::move(vocab));
}

Dataset load_dataset(const std::filesystem::path& path, const Schema& schema,
                     const Vocabulary& vocabulary) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open dataset file " + path.string());
  return read_dataset(in, schema, vocabulary);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  out << "tid,label";
  for (const auto& d : dataset.dimensions()) {
    out << ',';
    write_field(out, d.name);
  }
  out << '\n';
  for (const auto& t : dataset.trajectories()) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      write_field(out, t.tid());
      out << ',';
      write_field(out, t.label());
      for (std::size_t k = 0; k < dataset.dimension_count(); ++k) {
        out << ',';
        const auto& v = t.value(i, k);
        switch (dataset.dimensions()[k].kind) {
          case DimensionKind::categorical:
            write_field(out, dataset.vocabulary()[k].name(v.symbol_id()));
            break;
          case DimensionKind::numeric:
            out << format_number(v.x);
            break;
          case DimensionKind::spatial:
            out << format_number(v.x) << ' ' << format_number(v.y);
            break;
        }
      }
      out << '\n';
    }
  }
}

std::string serialize_dataset(const Dataset& dataset) {
  std::ostringstream out;
  write_dataset(out, dataset);
  return out.str();
}

void save_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write dataset file " + path.string());
  write_dataset(out, dataset);
}

}  // namespace movelets
