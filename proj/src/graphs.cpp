#include "trimgraph/graphs.hpp"

#include "trimgraph/trim.hpp"

namespace trimgraph {

Graph point_graph() {
  Graph g;
  g.add_vertex("v0");
  return g;
}

Graph circle_graph() {
  Graph g;
  g.add_vertex("v0_0");
  g.add_edge("e0_0", "v0_0", "v0_0");
  return g;
}

Graph o2_graph() {
  Graph g;
  g.add_vertex("w");
  g.add_edge("a", "w", "w");
  g.add_edge("b", "w", "w");
  return g;
}

Graph cuntz_ext_graph() { return one_loop_extension(o2_graph(), "vbar", {"w"}); }
Graph cuntz_sink_graph() { return one_sink_extension(o2_graph(), "vbar", {"w"}); }

Graph toeplitz_graph() {
  Graph g;
  g.add_vertex("v0_0");
  g.add_vertex("v0_1");
  g.add_edge("e0_0", "v0_0", "v0_0");
  g.add_edge("e01_0", "v0_0", "v0_1");
  return g;
}

Graph toeplitz_ext_graph() { return one_loop_extension(toeplitz_graph(), "v1_1", {"v0_0"}); }
Graph podles_graph() { return one_sink_extension(toeplitz_graph(), "v1_1", {"v0_0"}); }

namespace {

Graph triangular_graph(int n, bool last_loop) {
  if (n < 0) throw Error("parameter n must be >= 0");
  Graph g;
  for (int i = 0; i <= n; ++i) g.add_vertex("v" + std::to_string(i));
  for (int i = 0; i <= n; ++i) {
    std::string vi = "v" + std::to_string(i);
    if (i < n || last_loop) g.add_edge("e" + std::to_string(i), vi, vi);
    for (int j = i + 1; j <= n; ++j)
      g.add_edge("e" + std::to_string(i) + "_" + std::to_string(j), vi,
                 "v" + std::to_string(j));
  }
  return g;
}

Graph star_graph(int l, bool last_loop) {
  if (l < 1) throw Error("parameter l must be >= 1");
  Graph g;
  g.add_vertex("v0_0");
  for (int i = 0; i < l; ++i) g.add_vertex("v1_" + std::to_string(i));
  g.add_edge("e0_0", "v0_0", "v0_0");
  for (int i = 0; i < l; ++i)
    g.add_edge("e01_" + std::to_string(i), "v0_0", "v1_" + std::to_string(i));
  for (int i = 0; i < l; ++i) {
    if (i == l - 1 && !last_loop) continue;
    std::string vi = "v1_" + std::to_string(i);
    g.add_edge("e1_" + std::to_string(i), vi, vi);
  }
  return g;
}

}  // namespace

Graph sphere_graph(int n) { return triangular_graph(n, true); }
Graph ball_graph(int n) { return triangular_graph(n, false); }
Graph lens_graph(int l) { return star_graph(l, true); }
Graph ql_graph(int l) { return star_graph(l, false); }

}  // namespace trimgraph
