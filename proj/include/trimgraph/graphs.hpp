#ifndef TRIMGRAPH_GRAPHS_HPP
#define TRIMGRAPH_GRAPHS_HPP

#include "trimgraph/graph.hpp"

namespace trimgraph {

// Parameterized graph families. Vertices are declared with the trim vertex
// last and each vertex's loop (when present) as its first outgoing edge.

Graph point_graph();     // one vertex, no edges
Graph circle_graph();    // v0_0 with the loop e0_0
Graph o2_graph();        // w with loops a, b
Graph cuntz_ext_graph(); // o2 plus a loop vertex vbar fed from w
Graph cuntz_sink_graph();// o2 plus a sink vbar fed from w
Graph toeplitz_graph();  // v0_0 (loop e0_0), edge e01_0 to the sink v0_1
Graph toeplitz_ext_graph();  // toeplitz plus a loop vertex v1_1 fed from v0_0
Graph podles_graph();        // toeplitz plus a sink v1_1 fed from v0_0

// n+1 vertices v0..vn; vi carries the loop ei and one edge ei_j to each vj,
// j > i. The odd-sphere graph; n >= 0.
Graph sphere_graph(int n);
// sphere_graph(n) without the loop en; vn is a sink. The even-ball graph.
Graph ball_graph(int n);

// v0_0 with loop e0_0 and one edge e01_i to each v1_i, each v1_i with loop
// e1_i; l >= 1 vertices v1_0..v1_{l-1}. The lens graph.
Graph lens_graph(int l);
// lens_graph(l) without the loop e1_{l-1}; v1_{l-1} is a sink.
Graph ql_graph(int l);

}  // namespace trimgraph

#endif
