#include "trimgraph/trim.hpp"

#include <set>

namespace trimgraph {

TrimCertificate check_trimmable(const Graph& g, int vbar) {
  if (vbar < 0 || vbar >= g.num_vertices()) throw Error("unknown vertex index");
  TrimCertificate c;
  c.vbar = vbar;

  const auto& out = g.out_edges(vbar);
  if (out.size() != 1) {
    c.witnesses.push_back("(T1) s^-1(" + g.vertex_id(vbar) + ") has " +
                          std::to_string(out.size()) + " edges, expected exactly one loop");
  } else if (g.edge(out[0]).rng != vbar) {
    c.witnesses.push_back("(T1) the unique outgoing edge " + g.edge(out[0]).id +
                          " is not a loop");
  } else {
    c.ebar = out[0];
    bool other_in = false;
    for (int e : g.in_edges(vbar))
      if (e != c.ebar) other_in = true;
    if (!other_in) {
      c.witnesses.push_back("(T1) no edge other than the loop ends in " + g.vertex_id(vbar));
    } else {
      c.t1_holds = true;
    }
  }

  // (T2) quantifies over sources of non-loop edges into vbar; under (T1)
  // vbar itself cannot occur among them, and we skip it regardless.
  c.t2_holds = true;
  std::set<int> feeders;
  for (int e : g.in_edges(vbar))
    if (e != c.ebar && g.edge(e).src != vbar) feeders.insert(g.edge(e).src);
  for (int v : feeders) {
    bool has_external = false;
    for (int e : g.out_edges(v))
      if (g.edge(e).rng != vbar) has_external = true;
    if (!has_external) {
      c.t2_holds = false;
      c.witnesses.push_back("(T2) vertex " + g.vertex_id(v) +
                            " emits edges only into " + g.vertex_id(vbar));
    }
  }
  return c;
}

TrimCertificate check_trimmable(const Graph& g, const std::string& vbar) {
  return check_trimmable(g, g.vertex_index(vbar));
}

VertexSet trimmable_vertices(const Graph& g) {
  VertexSet s;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (check_trimmable(g, v).ok()) s.insert(v);
  return s;
}

TrimResult trim(const Graph& g, int vbar) {
  TrimCertificate c = check_trimmable(g, vbar);
  if (!c.ok()) {
    std::string msg = "graph is not trimmable at " + g.vertex_id(vbar) + ":";
    for (const auto& w : c.witnesses) msg += " " + w;
    throw Error(msg);
  }
  Graph eprime;
  for (const auto& id : g.vertex_ids()) eprime.add_vertex(id);
  for (int e = 0; e < g.num_edges(); ++e)
    if (e != c.ebar)
      eprime.add_edge(g.edge(e).id, g.vertex_id(g.edge(e).src), g.vertex_id(g.edge(e).rng));
  Graph edprime = g.quotient(VertexSet{vbar});
  return TrimResult{std::move(eprime), std::move(edprime)};
}

TrimResult trim(const Graph& g, const std::string& vbar) {
  return trim(g, g.vertex_index(vbar));
}

static Graph extend(const Graph& g, const std::string& vbar_id,
                    const std::vector<std::string>& attach, bool with_loop) {
  if (attach.empty())
    throw Error("extension needs at least one attaching vertex");
  Graph out;
  for (const auto& id : g.vertex_ids()) out.add_vertex(id);
  for (const auto& e : g.edges())
    out.add_edge(e.id, g.vertex_id(e.src), g.vertex_id(e.rng));
  out.add_vertex(vbar_id);
  if (with_loop) out.add_edge(vbar_id + "_loop", vbar_id, vbar_id);
  int k = 0;
  for (const auto& src : attach) {
    int v = g.vertex_index(src);
    if (g.is_sink(v))
      throw Error("attach vertex " + src + " is a sink; a sink must remain a sink");
    out.add_edge(src + "_to_" + vbar_id + "_" + std::to_string(k++), src, vbar_id);
  }
  return out;
}

Graph one_loop_extension(const Graph& g, const std::string& vbar_id,
                         const std::vector<std::string>& attach) {
  return extend(g, vbar_id, attach, true);
}

Graph one_sink_extension(const Graph& g, const std::string& vbar_id,
                         const std::vector<std::string>& attach) {
  return extend(g, vbar_id, attach, false);
}

}  // namespace trimgraph
