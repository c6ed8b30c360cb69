#ifndef TRIMGRAPH_CATALOG_HPP
#define TRIMGRAPH_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "trimgraph/graph.hpp"

namespace trimgraph {

struct CatalogInfo {
  std::string name;
  std::string summary;
  bool parametric = false;
  std::string param_name;  // "n" or "l"
  int min_param = 0;
  int default_param = 2;
  bool has_graph = true;
};

const std::vector<CatalogInfo>& catalog_entries();
const CatalogInfo* catalog_find(const std::string& name);

// Throws for unknown names, chain-only entries, and out-of-range parameters.
Graph catalog_graph(const std::string& name, int param);
// Declared trim vertex id, or nullopt when the entry has none.
std::optional<std::string> catalog_trim_vertex(const std::string& name, int param);

// JSON description: graph, K-groups, expected values, trim data.
std::string catalog_show(const std::string& name, int param);

struct CatalogCheck {
  std::string what;
  bool passed = false;
  std::string detail;
};
struct CatalogVerifyReport {
  std::string name;
  int param = 0;
  std::vector<CatalogCheck> checks;
  bool passed() const;
  std::string to_json_text() const;
  std::string to_text() const;
};

// Recomputes every expected value of the entry and cross-checks it with the
// elimination/minor oracle; runs the trim pipeline when the entry has a
// declared trim vertex.
CatalogVerifyReport catalog_verify(const std::string& name, int param);

// Brute-force graph isomorphism (vertex bijection matching edge counts).
bool graphs_isomorphic(const Graph& a, const Graph& b);

}  // namespace trimgraph

#endif
