#pragma once

#include "coarsen/hierarchy.hpp"

#include <filesystem>
#include <string>

namespace coarsen {

inline constexpr int kHierarchySchemaVersion = 1;

/// JSON document {version, graph_meta, levels:[{sets, sigma, method}], eps_bound}.
/// Kron levels carry "kind": "kron" and "keep" instead of "sets". Absent
/// sigma values are written as null.
std::string hierarchy_to_json(const Hierarchy& h);

/// Rebuilds every level from `base`. Throws ParseError on malformed input or
/// a version mismatch, InvalidPartitionError when sets overlap or miss
/// vertices, and DimensionMismatchError when `base` does not fit.
Hierarchy hierarchy_from_json(const std::string& text, const Laplacian& base);

void save_hierarchy(const Hierarchy& h, const std::filesystem::path& path);
Hierarchy load_hierarchy(const std::filesystem::path& path, const Laplacian& base);

}  // namespace coarsen
