#include "coarsen_tools/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace coarsen::tools {

namespace {

std::uint64_t key(Index a, Index b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

}  // namespace

WeightedGraph random_regular(Index n, Index d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n || (n * d) % 2 != 0) {
    throw std::invalid_argument("random_regular needs d < n and n*d even");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Index> points;
    points.reserve(static_cast<std::size_t>(n * d));
    for (Index v = 0; v < n; ++v) {
      for (Index t = 0; t < d; ++t) points.push_back(v);
    }
    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    bool stuck = false;
    while (!points.empty()) {
      bool placed = false;
      for (int tries = 0; tries < 64 && !placed; ++tries) {
        std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
        std::size_t x = pick(rng), y = pick(rng);
        const Index a = points[x], b = points[y];
        if (a == b || seen.count(key(a, b))) continue;
        seen.insert(key(a, b));
        edges.push_back({std::min(a, b), std::max(a, b), 1.0});
        if (x < y) std::swap(x, y);
        points[x] = points.back();
        points.pop_back();
        points[y] = points.back();
        points.pop_back();
        placed = true;
      }
      if (!placed) {
        // Only give up when no valid pair is left at all.
        bool any = false;
        for (std::size_t x = 0; x < points.size() && !any; ++x) {
          for (std::size_t y = x + 1; y < points.size() && !any; ++y) {
            any = points[x] != points[y] && !seen.count(key(points[x], points[y]));
          }
        }
        if (!any) {
          stuck = true;
          break;
        }
      }
    }
    if (!stuck) return WeightedGraph(n, std::move(edges));
  }
  throw std::runtime_error("random_regular: pairing kept getting stuck");
}

WeightedGraph erdos_renyi(Index n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi needs n >= 0 and p in [0, 1]");
  std::vector<Edge> edges;
  if (p == 0.0 || n < 2) return WeightedGraph(n, std::move(edges));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (p == 1.0) {
    for (Index j = 1; j < n; ++j) {
      for (Index i = 0; i < j; ++i) edges.push_back({i, j, 1.0});
    }
    return WeightedGraph(n, std::move(edges));
  }
  const double lq = std::log1p(-p);
  Index v = 1, w = -1;
  while (v < n) {
    w += 1 + static_cast<Index>(std::floor(std::log1p(-unif(rng)) / lq));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.push_back({w, v, 1.0});
  }
  return WeightedGraph(n, std::move(edges));
}

}  // namespace coarsen::tools
