#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "movelets/trajectory.hpp"

namespace movelets {

// CSV layout: header `tid,label,<dim1>,<dim2>,...`, one row per point.
// Rows sharing a tid form one trajectory in file order. A spatial value is
// a single field holding "x y". Fields may be double-quoted.

/// Reads a schema manifest: one `name=kind` pair per line, `#` comments.
Schema read_schema(const std::filesystem::path& path);
Schema parse_schema(std::istream& in);
void write_schema(std::ostream& out, const Dataset& dataset);

/// `vocabulary` seeds categorical interning so that a test file shares
/// symbol ids with the training file it was loaded after.
Dataset load_dataset(const std::filesystem::path& path, const Schema& schema,
                     const Vocabulary& vocabulary = {});
Dataset read_dataset(std::istream& in, const Schema& schema, const Vocabulary& vocabulary = {});

void write_dataset(std::ostream& out, const Dataset& dataset);
std::string serialize_dataset(const Dataset& dataset);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

}  // namespace movelets
