#pragma once

#include "coarsen/graph.hpp"

#include <cstdint>

namespace coarsen::tools {

/// Random simple d-regular graph on n vertices with unit weights. Points are
/// paired one at a time, rejecting pairs that would form a loop or a repeated
/// edge; a stuck pairing restarts. Requires n*d even and d < n.
WeightedGraph random_regular(Index n, Index d, std::uint64_t seed);

/// G(n, p) with unit weights, sampled by geometric skipping.
WeightedGraph erdos_renyi(Index n, double p, std::uint64_t seed);

}  // namespace coarsen::tools
