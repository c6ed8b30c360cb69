#include "trimgraph/graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace trimgraph {

int Graph::add_vertex(const std::string& id) {
  if (id.empty()) throw Error("empty vertex identifier");
  if (find_vertex(id)) throw Error("duplicate vertex identifier: " + id);
  if (find_edge(id)) throw Error("identifier already used by an edge: " + id);
  vertex_ids_.push_back(id);
  out_.emplace_back();
  in_.emplace_back();
  return num_vertices() - 1;
}

int Graph::add_edge(const std::string& id, const std::string& src, const std::string& rng) {
  if (id.empty()) throw Error("empty edge identifier");
  if (find_edge(id)) throw Error("duplicate edge identifier: " + id);
  auto s = find_vertex(src);
  if (!s) throw Error("edge " + id + " references undeclared source vertex: " + src);
  auto r = find_vertex(rng);
  if (!r) throw Error("edge " + id + " references undeclared range vertex: " + rng);
  int e = num_edges();
  edges_.push_back(Edge{id, *s, *r});
  edge_ids_.push_back(id);
  out_[*s].push_back(e);
  in_[*r].push_back(e);
  return e;
}

Graph Graph::parse(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    try {
      if (kw == "vertex") {
        std::string id, extra;
        if (!(ls >> id) || (ls >> extra)) throw Error("expected `vertex <id>`");
        g.add_vertex(id);
      } else if (kw == "edge") {
        std::string id, src, rng, extra;
        if (!(ls >> id >> src >> rng) || (ls >> extra))
          throw Error("expected `edge <id> <src> <rng>`");
        g.add_edge(id, src, rng);
      } else {
        throw Error("unknown declaration: " + kw);
      }
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return g;
}

Graph Graph::from_json_text(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid graph JSON: ") + e.what());
  }
  Graph g;
  try {
    for (const auto& v : j.at("vertices")) g.add_vertex(v.get<std::string>());
    for (const auto& e : j.at("edges"))
      g.add_edge(e.at("id").get<std::string>(), e.at("src").get<std::string>(),
                 e.at("rng").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid graph JSON: ") + e.what());
  }
  return g;
}

std::string Graph::to_text() const {
  std::ostringstream out;
  for (const auto& v : vertex_ids_) out << "vertex " << v << "\n";
  for (const auto& e : edges_)
    out << "edge " << e.id << " " << vertex_ids_[e.src] << " " << vertex_ids_[e.rng] << "\n";
  return out.str();
}

std::string Graph::to_json_text() const {
  nlohmann::json j;
  j["vertices"] = vertex_ids_;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_)
    j["edges"].push_back({{"id", e.id}, {"src", vertex_ids_[e.src]}, {"rng", vertex_ids_[e.rng]}});
  return j.dump();
}

int Graph::vertex_index(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw Error("unknown vertex: " + id);
  return *v;
}

std::optional<int> Graph::find_vertex(const std::string& id) const {
  auto it = std::find(vertex_ids_.begin(), vertex_ids_.end(), id);
  if (it == vertex_ids_.end()) return std::nullopt;
  return static_cast<int>(it - vertex_ids_.begin());
}

std::optional<int> Graph::find_edge(const std::string& id) const {
  auto it = std::find(edge_ids_.begin(), edge_ids_.end(), id);
  if (it == edge_ids_.end()) return std::nullopt;
  return static_cast<int>(it - edge_ids_.begin());
}

VertexSet Graph::sinks() const {
  VertexSet s;
  for (int v = 0; v < num_vertices(); ++v)
    if (is_sink(v)) s.insert(v);
  return s;
}

bool Graph::is_hereditary(const VertexSet& h) const {
  for (int v : h)
    if (v < 0 || v >= num_vertices()) throw Error("vertex set member out of range");
  for (const auto& e : edges_)
    if (h.count(e.src) && !h.count(e.rng)) return false;
  return true;
}

VertexSet Graph::saturate(const VertexSet& h) const {
  if (!is_hereditary(h)) throw Error("saturate: vertex set is not hereditary");
  VertexSet s = h;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < num_vertices(); ++v) {
      if (s.count(v) || is_sink(v)) continue;
      bool all_in = true;
      for (int e : out_[v])
        if (!s.count(edges_[e].rng)) { all_in = false; break; }
      if (all_in) {
        s.insert(v);
        changed = true;
      }
    }
  }
  return s;
}

bool Graph::is_saturated(const VertexSet& h) const {
  return is_hereditary(h) && saturate(h) == h;
}

Graph Graph::quotient(const VertexSet& h) const {
  if (!is_hereditary(h) || saturate(h) != h)
    throw Error("quotient: vertex set is not saturated hereditary");
  Graph g;
  for (int v = 0; v < num_vertices(); ++v)
    if (!h.count(v)) g.add_vertex(vertex_ids_[v]);
  for (const auto& e : edges_)
    if (!h.count(e.rng)) g.add_edge(e.id, vertex_ids_[e.src], vertex_ids_[e.rng]);
  return g;
}

VertexSet Graph::vertex_set(const std::vector<std::string>& ids) const {
  VertexSet s;
  for (const auto& id : ids) s.insert(vertex_index(id));
  return s;
}

bool Graph::operator==(const Graph& o) const {
  if (vertex_ids_ != o.vertex_ids_) return false;
  if (edges_.size() != o.edges_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto &a = edges_[i], &b = o.edges_[i];
    if (a.id != b.id || a.src != b.src || a.rng != b.rng) return false;
  }
  return true;
}

std::string Path::to_string(const Graph& g) const {
  if (edges.empty()) return "(" + g.vertex_id(base) + ")";
  std::string out;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) out += ".";
    out += g.edge(edges[i]).id;
  }
  return out;
}

std::vector<Path> enumerate_paths(const Graph& g, int max_len,
                                  const std::optional<VertexSet>& end) {
  std::vector<Path> result;
  std::vector<Path> frontier;
  for (int v = 0; v < g.num_vertices(); ++v) frontier.push_back(Path::vertex(v));
  auto keep = [&](const Path& p) {
    return !end || end->count(p.range(g)) > 0;
  };
  for (int len = 0; len <= max_len; ++len) {
    for (const auto& p : frontier)
      if (keep(p)) result.push_back(p);
    if (len == max_len) break;
    std::vector<Path> next;
    for (const auto& p : frontier) {
      for (int e : g.out_edges(p.range(g))) {
        Path q = p;
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    }
    // extension by declaration-ordered out-edges keeps each length block in
    // lexicographic order by edge sequence
    std::sort(next.begin(), next.end(),
              [](const Path& a, const Path& b) { return a.edges < b.edges; });
    frontier = std::move(next);
  }
  return result;
}

}  // namespace trimgraph
