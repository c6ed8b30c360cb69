#ifndef TRIMGRAPH_GRAPH_HPP
#define TRIMGRAPH_GRAPH_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace trimgraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::string id;
  int src = -1;
  int rng = -1;
};

// Vertex subset, by vertex index into the owning graph.
using VertexSet = std::set<int>;

// Finite directed multigraph. Vertices and edges keep their declaration
// order; all matrix indexing follows that order.
class Graph {
 public:
  Graph() = default;

  int add_vertex(const std::string& id);
  int add_edge(const std::string& id, const std::string& src, const std::string& rng);

  // Line-oriented format: `vertex <id>` / `edge <id> <src> <rng>`, `#` comments.
  static Graph parse(const std::string& text);
  static Graph from_json_text(const std::string& json_text);

  std::string to_text() const;
  std::string to_json_text() const;

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int vertex_index(const std::string& id) const;          // throws on unknown id
  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_edge(const std::string& id) const;

  // Edge indices in declaration order.
  const std::vector<int>& out_edges(int v) const { return out_.at(v); }
  const std::vector<int>& in_edges(int v) const { return in_.at(v); }
  bool is_sink(int v) const { return out_.at(v).empty(); }

  VertexSet sinks() const;
  bool is_hereditary(const VertexSet& h) const;
  // Least saturated superset of a hereditary set; throws if h is not hereditary.
  VertexSet saturate(const VertexSet& h) const;
  bool is_saturated(const VertexSet& h) const;
  // Removes the vertices of h and every edge with range in h; h must be
  // saturated hereditary.
  Graph quotient(const VertexSet& h) const;

  VertexSet vertex_set(const std::vector<std::string>& ids) const;

  bool operator==(const Graph& o) const;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::string> edge_ids_;
  std::vector<std::vector<int>> out_, in_;
};

// Edge path; length-0 paths carry their base vertex.
struct Path {
  std::vector<int> edges;
  int base = -1;  // used only when edges is empty

  int length() const { return static_cast<int>(edges.size()); }
  int source(const Graph& g) const { return edges.empty() ? base : g.edge(edges.front()).src; }
  int range(const Graph& g) const { return edges.empty() ? base : g.edge(edges.back()).rng; }
  bool operator==(const Path& o) const = default;
  auto operator<=>(const Path& o) const = default;

  static Path vertex(int v) { return Path{{}, v}; }
  std::string to_string(const Graph& g) const;
};

// All paths of length <= max_len, ordered by (length, edge sequence).
// When `end` is given, only paths whose range lies in it are kept.
std::vector<Path> enumerate_paths(const Graph& g, int max_len,
                                  const std::optional<VertexSet>& end = std::nullopt);

}  // namespace trimgraph

#endif
