#pragma once

#include "coarsen/graph.hpp"

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace coarsen {

enum class GraphFormat { matrix_market, edge_list };

/// Picks a format from the file extension (.mtx -> Matrix Market, else edge list).
GraphFormat guess_format(const std::filesystem::path& path);

struct LoadedGraph {
  WeightedGraph graph;
  /// original_ids[v] is the id the input file used for dense vertex v.
  std::vector<long long> original_ids;
  /// Vertices with no incident edge; allowed, but reported.
  std::vector<Index> isolated;
};

/// Matrix Market coordinate files (symmetric or general). General files must
/// be symmetric in values; a pair stored twice with equal weight is merged,
/// and repeated entries of one orientation are summed. Ids are 1-based.
///
/// Edge lists hold "src dst [weight]" per line with '#' comments; ids are
/// arbitrary non-negative integers remapped densely in ascending order, the
/// reverse of an edge may repeat it with the same weight, and any other
/// duplicate is an error. A "# vertices: n" comment fixes the ids to 0..n-1
/// so isolated vertices survive a round trip.
LoadedGraph read_graph(std::istream& in, GraphFormat format);
LoadedGraph load_graph(const std::filesystem::path& path, GraphFormat format);
LoadedGraph load_graph(const std::filesystem::path& path);

/// Writes weights with 17 significant digits so a reload is bit-exact.
void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format);
void save_graph(const std::filesystem::path& path, const WeightedGraph& g, GraphFormat format);

}  // namespace coarsen
