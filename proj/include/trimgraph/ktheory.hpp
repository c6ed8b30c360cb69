#ifndef TRIMGRAPH_KTHEORY_HPP
#define TRIMGRAPH_KTHEORY_HPP

#include <string>
#include <vector>

#include "trimgraph/abelian.hpp"
#include "trimgraph/graph.hpp"
#include "trimgraph/intmat.hpp"
#include "trimgraph/lpa.hpp"

namespace trimgraph {

// K-groups of the graph C*-algebra: with A the adjacency matrix and the
// columns of 1 - A^t restricted to the regular (non-sink) vertices,
// K0 = coker and K1 = ker of that matrix.
struct KGroups {
  FGAbelianGroup k0;  // ambient Z^{vertices}, labels "[P_v]"
  FGAbelianGroup k1;  // free
  std::vector<IntVec> k1_basis;     // kernel vectors in Z^{regular}
  std::vector<int> regular_vertices;
  IntMatrix matrix;  // vertices x regular

  std::string to_json_text() const;
};

KGroups k_groups(const Graph& g);

// Ambient Z^{vertices} vector of a diagonal projection: sum of e_{r(x)}
// over its monomials S_x S_x* with multiplicity. Throws on non-projections
// and on projections that are not a nonnegative combination of diagonal
// monomials.
IntVec projection_vertex_vector(const Graph& g, const LpaElement& p);
// The k0 class (normal coordinates) of such a projection.
IntVec class_of_projection(const KGroups& k, const Graph& g, const LpaElement& p);
IntVec class_of_unit(const KGroups& k, const Graph& g);

// U = S_ebar + (1 - S_ebar S_ebar*) at a vertex whose only outgoing edge is
// a loop ebar; requires the graph sink-free so that U is unitary. The K1
// class is the coordinate vector with 1 at vbar, checked against ker(1-A^t).
struct K1Unitary {
  LpaElement u;
  int ebar = -1;
  IntVec vector;       // in Z^{regular}
  bool unitary = false;
  bool in_kernel = false;
};
K1Unitary distinguished_k1_unitary(const Graph& g, int vbar);

// AF filtration of the gauge-invariant subalgebra: at level n one matrix
// block per non-sink vertex with an incoming path of length n (dimension =
// path count), plus one frozen block per (sink, level k <= n) pair.
struct BratteliBlock {
  int vertex = -1;
  int sink_level = -1;  // -1 for regular blocks; freeze level for sink blocks
  Int dim;
  std::string label(const Graph& g) const;
};
struct BratteliDiagram {
  const Graph* g = nullptr;
  std::vector<std::vector<BratteliBlock>> levels;
  std::vector<IntMatrix> maps;  // maps[n]: multiplicities level n -> n+1
};
BratteliDiagram fixed_point_bratteli(const Graph& g, int levels);

// K0 colimit of the diagram's free groups along the multiplicity matrices,
// with three conservative recognition rules; anything else is Unrecognized.
struct ColimitGroup {
  enum class Kind { Free, FreeCountable, InvertedScalars, Unrecognized };
  Kind kind = Kind::Unrecognized;
  std::vector<int> ranks;
  std::vector<IntMatrix> maps;
  bool stationary = false;
  IntMatrix stationary_map;  // valid when stationary
  long long free_rank = 0;            // Free
  IntVec scalars;                     // InvertedScalars: one m_i per Z[1/m_i]
  std::vector<IntVec> eigenvectors;   // InvertedScalars: matching eigenbasis
  std::string label;

  std::string to_json_text() const;
};
ColimitGroup bratteli_k0_colimit(const BratteliDiagram& b);

// Brute-force validation of an InvertedScalars label for a stationary
// diagram: compares membership in U_n B^{-n} Z^r with membership in
// {sum q_i w_i : q_i in Z[1/m_i]} over a grid of rationals p/m^k, k <= max_k.
bool colimit_label_oracle(const ColimitGroup& c, int max_k = 12);

// K0-level map induced by a generator hom whose vertex projections map to
// diagonal projections (quotients, inclusions, the gauge coaction, f).
GroupHom induced_k0_map(const GenHom& h, const KGroups& src, const KGroups& tgt);

}  // namespace trimgraph

#endif
