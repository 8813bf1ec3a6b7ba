#include "coarsen/hierarchy_io.hpp"

#include "coarsen/baselines.hpp"
#include "coarsen/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace coarsen {

using nlohmann::json;

std::string hierarchy_to_json(const Hierarchy& h) {
  json meta = {{"name", h.meta().name}, {"n_vertices", h.meta().n_vertices}, {"n_edges", h.meta().n_edges}};
  for (const auto& [k, v] : h.meta().extra) meta[k] = v;

  json levels = json::array();
  for (const auto& level : h.levels()) {
    json l;
    if (level.kind == LevelKind::kron) {
      l["kind"] = "kron";
      l["keep"] = level.keep;
    } else {
      l["sets"] = level.partition.sets();
    }
    l["sigma"] = level.sigma ? json(*level.sigma) : json(nullptr);
    l["method"] = level.method;
    levels.push_back(std::move(l));
  }
  const auto eps = h.eps_bound();
  json doc = {{"version", kHierarchySchemaVersion},
              {"graph_meta", std::move(meta)},
              {"levels", std::move(levels)},
              {"eps_bound", eps ? json(*eps) : json(nullptr)},
              {"stalled", h.stalled},
              {"shortfall", h.shortfall},
              {"target", h.target}};
  return doc.dump(1);
}

Hierarchy hierarchy_from_json(const std::string& text, const Laplacian& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("hierarchy JSON: ") + e.what(), 0);
  }
  try {
    const int version = doc.at("version").get<int>();
    if (version != kHierarchySchemaVersion) {
      throw ParseError("hierarchy schema version " + std::to_string(version) + " is not supported (expected " +
                           std::to_string(kHierarchySchemaVersion) + ")",
                       0);
    }
    GraphMeta meta;
    const auto& m = doc.at("graph_meta");
    for (const auto& [k, v] : m.items()) {
      if (k == "name") {
        meta.name = v.get<std::string>();
      } else if (k == "n_vertices") {
        meta.n_vertices = v.get<Index>();
      } else if (k == "n_edges") {
        meta.n_edges = v.get<Index>();
      } else {
        meta.extra[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    if (meta.n_vertices != base.dim()) {
      throw DimensionMismatchError("hierarchy was built on " + std::to_string(meta.n_vertices) +
                                   " vertices, base graph has " + std::to_string(base.dim()));
    }

    Hierarchy h(base, meta);
    for (const auto& l : doc.at("levels")) {
      const std::string method = l.at("method").get<std::string>();
      const std::string kind = l.value("kind", std::string("consistent"));
      if (kind == "kron") {
        auto keep = l.at("keep").get<std::vector<Index>>();
        Laplacian reduced = kron_reduce(h.coarsest(), keep);
        h.add_kron_level(std::move(keep), std::move(reduced), method);
        continue;
      }
      if (kind != "consistent") throw ParseError("unknown level kind '" + kind + "'", 0);
      std::optional<double> sigma;
      if (!l.at("sigma").is_null()) sigma = l.at("sigma").get<double>();
      Partition p(h.coarsest().dim(), l.at("sets").get<std::vector<std::vector<Index>>>());
      h.add_level(std::move(p), sigma, method);
    }
    h.stalled = doc.value("stalled", false);
    h.shortfall = doc.value("shortfall", false);
    h.target = doc.value("target", Index{-1});

    const auto& stored = doc.at("eps_bound");
    const auto eps = h.eps_bound();
    if (stored.is_null() != !eps.has_value() ||
        (eps && std::abs(stored.get<double>() - *eps) > 1e-12 * (1.0 + std::abs(*eps)))) {
      throw ParseError("stored eps_bound does not match the level sigmas", 0);
    }
    return h;
  } catch (const json::exception& e) {
    throw ParseError(std::string("hierarchy JSON: ") + e.what(), 0);
  }
}

void save_hierarchy(const Hierarchy& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string(), 0);
  out << hierarchy_to_json(h) << '\n';
}

Hierarchy load_hierarchy(const std::filesystem::path& path, const Laplacian& base) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return hierarchy_from_json(ss.str(), base);
}

}  // namespace coarsen
