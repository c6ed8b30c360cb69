#ifndef TRIMGRAPH_TRIM_HPP
#define TRIMGRAPH_TRIM_HPP

#include <string>
#include <vector>

#include "trimgraph/graph.hpp"

namespace trimgraph {

// Verdict of the two trimmability conditions at a distinguished vertex:
// (T1) the only edge leaving vbar is a loop ebar, and some other edge ends
//      in vbar;
// (T2) every vertex emitting an edge into vbar (other than ebar) also emits
//      an edge that does not end in vbar.
struct TrimCertificate {
  int vbar = -1;
  int ebar = -1;  // -1 when (T1) fails to produce a loop
  bool t1_holds = false;
  bool t2_holds = false;
  std::vector<std::string> witnesses;  // human-readable failure witnesses

  bool ok() const { return t1_holds && t2_holds; }
};

struct TrimResult {
  Graph e_prime;   // E with the loop ebar removed
  Graph e_dprime;  // E / {vbar}
};

TrimCertificate check_trimmable(const Graph& g, int vbar);
TrimCertificate check_trimmable(const Graph& g, const std::string& vbar);

VertexSet trimmable_vertices(const Graph& g);

TrimResult trim(const Graph& g, int vbar);
TrimResult trim(const Graph& g, const std::string& vbar);

// Adds a vertex vbar with a loop and one incoming edge per `attach`
// occurrence. New edge ids are `<source>_to_<vbar>_<k>`; the loop is
// `<vbar>_loop`. Attach vertices must be non-sinks of g.
Graph one_loop_extension(const Graph& g, const std::string& vbar_id,
                         const std::vector<std::string>& attach);

// Same without the loop; equals trim(one_loop_extension(...)).e_prime.
Graph one_sink_extension(const Graph& g, const std::string& vbar_id,
                         const std::vector<std::string>& attach);

}  // namespace trimgraph

#endif
