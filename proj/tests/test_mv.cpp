#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "trimgraph/graphs.hpp"
#include "trimgraph/mv.hpp"

using namespace trimgraph;

TEST_CASE("pullback diagrams verify on the catalog trimmables") {
  for (auto [g, v] : std::vector<std::pair<Graph, std::string>>{
           {cuntz_ext_graph(), "vbar"},
           {toeplitz_ext_graph(), "v1_1"},
           {sphere_graph(2), "v2"},
           {lens_graph(2), "v1_1"}}) {
    PullbackDiagram d = assemble_pullback(g, g.vertex_index(v), 2, 2);
    CHECK_MESSAGE(d.commutes, v);
    CHECK_MESSAGE(d.f_well_defined, d.f_why);
    CHECK_MESSAGE(d.kernel_inclusion.passed, v);
  }
  CHECK_THROWS_AS(assemble_pullback(o2_graph(), 0), Error);
}

TEST_CASE("direct sums embed both summands") {
  FGAbelianGroup a = cokernel([] {
    IntMatrix m(1, 1);
    m.at(0, 0) = 2;
    return m;
  }());
  FGAbelianGroup b = FGAbelianGroup::free(2);
  DirectSum d = direct_sum(a, b);
  CHECK(d.group.torsion == IntVec{2});
  CHECK(d.group.free_rank == 2);
  CHECK(d.a_pos.size() == 1);
  CHECK(d.b_pos.size() == 2);
  // positions are disjoint and cover the coordinates
  std::set<int> all(d.a_pos.begin(), d.a_pos.end());
  all.insert(d.b_pos.begin(), d.b_pos.end());
  CHECK(static_cast<int>(all.size()) == d.group.coord_dim());
}

TEST_CASE("fixed K0 of the cuntz extension") {
  Graph e = cuntz_ext_graph();
  std::string fix_label;
  FixedK0Result r = fixed_k0_auto(e, e.vertex_index("vbar"), 8, &fix_label);
  CHECK(fix_label == "Z[1/2]");
  CHECK(r.solved);
  CHECK(!r.is_fg);
  CHECK(r.label == "Z + Z[1/2]");
}

TEST_CASE("fixed K0 of the toeplitz extension") {
  Graph e = toeplitz_ext_graph();
  std::string fix_label;
  FixedK0Result r = fixed_k0_auto(e, e.vertex_index("v1_1"), 8, &fix_label);
  CHECK(fix_label == "FreeCountable");
  CHECK(r.solved);
  CHECK(r.label == "FreeCountable");
}

TEST_CASE("fixed K0 of the families is finitely generated free") {
  for (int n = 1; n <= 4; ++n) {
    Graph e = sphere_graph(n);
    FixedK0Result r = fixed_k0_auto(e, e.vertex_index("v" + std::to_string(n)), 8);
    CHECK(r.solved);
    REQUIRE(r.is_fg);
    CHECK(r.group.is_free());
    CHECK(r.group.free_rank == n + 1);
  }
  for (int l = 2; l <= 4; ++l) {
    Graph e = lens_graph(l);
    FixedK0Result r = fixed_k0_auto(e, e.vertex_index("v1_" + std::to_string(l - 1)), 8);
    CHECK(r.solved);
    REQUIRE(r.is_fg);
    CHECK(r.group.free_rank == l + 1);
  }
}

TEST_CASE("assembled sequence data for the lens square") {
  Graph e = lens_graph(3);
  KGroups kp = k_groups(ql_graph(3)), kd = k_groups(lens_graph(2));
  IntMatrix alpha = matched_k1_map(ql_graph(3), kp, lens_graph(2), kd);
  // the matched map embeds ker K1(Q_3) = <e_v1_0, e_v1_1> into K1(L_2)
  CHECK(alpha.rows() == 2);
  CHECK(alpha.cols() == 2);
  FixedKInput in;
  in.fix_dprime = FGAbelianGroup::free(3, lens_graph(2).vertex_ids());
  in.k1_map = alpha;
  AfSequence s = assemble_fixed_sequence(e, e.vertex_index("v1_2"), in);
  REQUIRE(s.middle);
  CHECK(s.middle->group.free_rank == 3 + 3);
  CHECK(is_surjective(*s.b));
  FixedK0Result r = solve_fixed_k0(s);
  CHECK(r.solved);
  CHECK(r.group.free_rank == 4);
  // connecting map vanishes: the cokernel keeps nothing
  CHECK(r.connecting_cokernel.is_zero());
}

TEST_CASE("milnor idempotent for the trim squares") {
  for (auto [g, v] : std::vector<std::pair<Graph, std::string>>{
           {sphere_graph(1), "v1"}, {sphere_graph(3), "v3"}, {lens_graph(1), "v1_0"}}) {
    MilnorResult m = trim_milnor(g, g.vertex_index(v));
    CHECK_MESSAGE(m.passed(), m.report);
    // the defect projection sits exactly at the trimmed vertex
    const Graph& ep = *m.lift_graph;
    CHECK(m.defect == LpaElement::vertex_projection(ep, ep.vertex_index(v)));
  }
  // no single-loop boundary vertex in these squares
  Graph l3 = lens_graph(3);
  CHECK_THROWS_AS(trim_milnor(l3, l3.vertex_index("v1_2")), Error);
}

TEST_CASE("milnor checks notice broken lifts") {
  Graph e = sphere_graph(1);
  CanonicalHoms h = canonical_homs(e, e.vertex_index("v1"));
  const Graph& ep = *h.e_prime;
  const Graph& ed = *h.e_dprime;
  K1Unitary ku = distinguished_k1_unitary(ed, 0);
  // wrong lift: the cross edge dies under pi2, so sigma(c) != u
  LpaElement c = LpaElement::edge_isometry(ep, *ep.find_edge("e0_1"));
  MilnorData md{&ed, h.pi2, ku.u, c, c.star()};
  MilnorResult m = milnor_idempotent(md);
  CHECK(!m.passed());
}

TEST_CASE("projective chain produces the free groups with vertex generators") {
  ChainReport r = projective_chain(4);
  CHECK(r.ok);
  CHECK(r.stages.size() == 4);
  CHECK(r.k0.is_free());
  CHECK(r.k0.free_rank == 5);
  CHECK(r.k0.ambient_labels == std::vector<std::string>{"v0", "v1", "v2", "v3", "v4"});
  for (const auto& s : r.stages) {
    CHECK(s.milnor.passed());
    CHECK(s.connecting_rank_one);
    CHECK(s.generators_span_kernel);
    CHECK(s.exact);
  }
}

TEST_CASE("teardrop chain produces the free groups with vertex generators") {
  ChainReport r = teardrop_chain(4);
  CHECK(r.ok);
  CHECK(r.stages.size() == 4);
  CHECK(r.k0.free_rank == 5);
  CHECK(r.k0.ambient_labels ==
        std::vector<std::string>{"v0_0", "v1_0", "v1_1", "v1_2", "v1_3"});
  for (const auto& s : r.stages) {
    CHECK(s.milnor.passed());
    CHECK(s.connecting_rank_one);
    CHECK(s.generators_span_kernel);
    CHECK(s.exact);
  }
  // the teardrop Milnor data lands on the distinguished sink projection
  const ChainStage& last = r.stages.back();
  const Graph& lg = *last.milnor.lift_graph;
  CHECK(last.milnor.defect == LpaElement::vertex_projection(lg, lg.vertex_index("v1_3")));
}

TEST_CASE("toeplitz pullback presentation") {
  QlpbReport r = verify_qlpb(2, 3);
  CHECK(r.passed());
  CHECK(r.product_pairs > 0);
  CHECK(r.ideal_monomials_checked > 0);
  CHECK_THROWS_AS(verify_qlpb(1, 3), Error);
}
