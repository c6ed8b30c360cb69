#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "trimgraph/graphs.hpp"
#include "trimgraph/trim.hpp"

using namespace trimgraph;

TEST_CASE("certificate conditions") {
  Graph o2 = o2_graph();
  TrimCertificate c = check_trimmable(o2, "w");
  CHECK(!c.ok());
  CHECK(!c.t1_holds);  // two loops, and no other vertex feeds w
  CHECK(!c.witnesses.empty());

  Graph ext = cuntz_ext_graph();
  c = check_trimmable(ext, "vbar");
  CHECK(c.ok());
  CHECK(ext.edge(c.ebar).id == "vbar_loop");
  CHECK(trimmable_vertices(ext) == ext.vertex_set({"vbar"}));

  // T2 failure: the feeding vertex emits only into vbar
  Graph bad = Graph::parse(
      "vertex w\nvertex vbar\nedge f w vbar\nedge loop vbar vbar\n");
  c = check_trimmable(bad, "vbar");
  CHECK(c.t1_holds);
  CHECK(!c.t2_holds);
}

TEST_CASE("trim splits into loop-removed and vertex-removed graphs") {
  Graph ext = cuntz_ext_graph();
  TrimResult t = trim(ext, "vbar");
  CHECK(t.e_prime == cuntz_sink_graph());
  CHECK(t.e_dprime == o2_graph());
  CHECK_THROWS_AS(trim(o2_graph(), "w"), Error);
}

TEST_CASE("family trims are identifier-preserving") {
  for (int n = 1; n <= 6; ++n) {
    TrimResult t = trim(sphere_graph(n), "v" + std::to_string(n));
    CHECK(t.e_prime == ball_graph(n));
    CHECK(t.e_dprime == sphere_graph(n - 1));
  }
  for (int l = 2; l <= 6; ++l) {
    TrimResult t = trim(lens_graph(l), "v1_" + std::to_string(l - 1));
    CHECK(t.e_prime == ql_graph(l));
    CHECK(t.e_dprime == lens_graph(l - 1));
  }
  TrimResult t1 = trim(lens_graph(1), "v1_0");
  CHECK(t1.e_prime == ql_graph(1));
  CHECK(t1.e_dprime == circle_graph());
}

TEST_CASE("extensions invert trimming") {
  Graph base = toeplitz_graph();
  Graph ext = one_loop_extension(base, "new", {"v0_0", "v0_0"});
  TrimCertificate c = check_trimmable(ext, "new");
  CHECK(c.ok());
  TrimResult t = trim(ext, "new");
  CHECK(t.e_dprime == base);
  CHECK(t.e_prime == one_sink_extension(base, "new", {"v0_0", "v0_0"}));
  // two attaching edges got distinct ids
  CHECK(ext.find_edge("v0_0_to_new_0"));
  CHECK(ext.find_edge("v0_0_to_new_1"));
  CHECK(ext.find_edge("new_loop"));
}

TEST_CASE("extension input validation") {
  Graph base = toeplitz_graph();
  // attaching at a sink would break (T2)
  CHECK_THROWS_AS(one_loop_extension(base, "new", {"v0_1"}), Error);
  CHECK_THROWS_AS(one_loop_extension(base, "v0_0", {"v0_0"}), Error);  // id clash
  CHECK_THROWS_AS(one_loop_extension(base, "new", {"missing"}), Error);
}
