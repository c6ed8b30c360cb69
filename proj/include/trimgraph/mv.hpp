#ifndef TRIMGRAPH_MV_HPP
#define TRIMGRAPH_MV_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trimgraph/abelian.hpp"
#include "trimgraph/graph.hpp"
#include "trimgraph/ktheory.hpp"
#include "trimgraph/lpa.hpp"
#include "trimgraph/trim.hpp"

namespace trimgraph {

// The trim pullback square: C*(E) over C*(E'') x u, with legs through
// C*(E'') and C*(E') x u.
struct PullbackDiagram {
  TrimCertificate cert;
  CanonicalHoms homs;
  bool commutes = false;
  bool f_well_defined = false;
  std::string f_why;
  KernelInclusionReport kernel_inclusion;

  bool passed() const { return commutes && f_well_defined && kernel_inclusion.passed; }
  std::string to_json_text(const Graph& e) const;
};

PullbackDiagram assemble_pullback(const Graph& e, int vbar, int max_len = 3,
                                  int max_u_deg = 2);

// One element of a pullback C*-algebra: a over the base-side corner, b over
// the lift corner, subject to left(a) = sigma(b).
struct PairElement {
  LpaElement a, b;
};

// Caller-supplied K-data for the AF six-term sequence of a trim square.
struct FixedKInput {
  // K0 of the gauge-invariant subalgebra of C*(E''): exactly one of these.
  // The group's ambient labels must be vertex ids of E''.
  std::optional<FGAbelianGroup> fix_dprime;
  std::string fix_dprime_label;  // e.g. "Z[1/2]", "FreeCountable"
  IntMatrix k1_map;              // K1(E') -> K1(E'') on the kernel bases
};

// Direct sum with the coordinate embeddings of the two summands.
struct DirectSum {
  FGAbelianGroup group;
  std::vector<int> a_pos, b_pos;  // summand coordinate -> sum coordinate
};
DirectSum direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);

// The six-term sequence of the trim square with the AF K1 slots zero:
// 0 -> K1(E') -> K1(E'') -> K0(fix E) -> K0(fix E'') + K0(E') -> K0(E'') -> 0,
// with the third node unknown until solved.
struct AfSequence {
  std::shared_ptr<const Graph> e, e_prime, e_dprime;
  int vbar = -1;
  CanonicalHoms homs;
  KGroups kp, kd;  // K-groups of E', E''
  FixedKInput input;

  // assembled when the fixed slot is finitely generated:
  std::optional<DirectSum> middle;
  std::optional<GroupHom> alpha;  // K1(E') -> K1(E'')
  std::optional<GroupHom> b;      // middle -> K0(E''), (iota*, -pi2*)
  // column v: image in the middle of the vertex-projection generator P_v of
  // the unknown node (left component through pi1, right through f)
  std::optional<IntMatrix> vertex_images_in_middle;

  std::vector<std::string> node_labels() const;
};

AfSequence assemble_fixed_sequence(const Graph& e, int vbar, const FixedKInput& kdata);

struct FixedK0Result {
  bool solved = false;
  bool is_fg = false;
  FGAbelianGroup group;  // when is_fg
  std::string label;     // symbolic label otherwise ("Z + Z[1/2]", "FreeCountable")
  FGAbelianGroup connecting_cokernel;        // C = coker(K1(E') -> K1(E''))
  std::vector<IntVec> kernel_basis_middle;   // basis of ker b in middle coordinates
  std::string provenance;
};

FixedK0Result solve_fixed_k0(const AfSequence& s);

// Exactness of the assembled sequence at every finitely generated node,
// after substituting a solved finitely generated group X with a given
// boundary map K1(E'') -> X and generator images X -> middle.
bool af_exactness(const AfSequence& s, const FGAbelianGroup& x, const GroupHom& boundary,
                  const GroupHom& a_map, std::string* why = nullptr);

// Milnor clutching idempotent for a unitary u of the base corner and lifts
// c, d through sigma. Left components of the 2x2 matrix are the scalars
// [[1,0],[0,0]] over the base graph.
struct MilnorData {
  const Graph* base = nullptr;
  GenHom sigma;  // lift corner -> base
  LpaElement u, c, d;
};

struct MilnorResult {
  bool u_unitary = false;
  bool lifts_ok = false;
  bool pairs_agree = false;
  bool self_adjoint = false;
  bool idempotent = false;
  bool expected_shape = false;  // off entries 0, top-left (1, unit - defect)
  PairElement p[2][2];
  LpaElement top_left;  // b-component of p[0][0]
  LpaElement defect;    // projection with -boundary([u]) = [defect]
  std::string report;
  // own the trim graphs when the caller does not (see trim_milnor)
  std::shared_ptr<const Graph> base_graph, lift_graph;

  bool passed() const {
    return u_unitary && lifts_ok && pairs_agree && self_adjoint && idempotent &&
           expected_shape;
  }
};

MilnorResult milnor_idempotent(const MilnorData& md);

// Milnor boundary data for a trim square: picks a vertex w emitting both a
// loop and an edge into vbar, lifts the distinguished unitary of E'' at w
// through pi2 by c = S_loop + S_cross + (1 - P_w - P_vbar). Requires E''
// sink-free with the loop as w's only outgoing edge there.
MilnorResult trim_milnor(const Graph& e, int vbar, std::string* lift_desc = nullptr);

// K1(E') -> K1(E'') on the kernel bases by matching regular-vertex ids;
// throws when a matched basis vector leaves the target kernel.
IntMatrix matched_k1_map(const Graph& e_prime, const KGroups& kp,
                         const Graph& e_dprime, const KGroups& kd);

// Full fixed-point K0 driver for a trim square: reads the fixed slot of E''
// off its Bratteli colimit (free groups become vertex-labeled inputs, the
// recognized infinite shapes become symbolic labels) and solves.
FixedK0Result fixed_k0_auto(const Graph& e, int vbar, int levels,
                            std::string* fix_label_out = nullptr);

GenHom identity_hom(const Graph& g);

// K0 of the fixed-point chains, one trim stage at a time, with generator
// tracking ([P_v] classes) and the Milnor boundary identification.
struct ChainStage {
  int param = 0;
  FixedK0Result result;
  MilnorResult milnor;
  bool connecting_rank_one = false;  // C = Z, generated by the boundary class
  bool generators_span_kernel = false;
  bool exact = false;
  bool ok = false;
};

struct ChainReport {
  std::vector<ChainStage> stages;
  FGAbelianGroup k0;  // ambient labels are vertex ids of the final stage
  bool ok = false;
};

// K0 of the even complex projective space chain (fixed-point algebras of
// the odd sphere graphs), n >= 0.
ChainReport projective_chain(int n);
// K0 of the teardrop chain (fixed-point algebras of the lens graphs), l >= 1.
ChainReport teardrop_chain(int l);

// Bounded symbolic verification of the Toeplitz pullback presentation of
// the parameterized sink graph family (l >= 2).
struct QlpbReport {
  int l = 0, max_len = 0;
  bool products_vanish = false;
  long long product_pairs = 0;
  bool chi2_ideal_ok = false;
  long long ideal_monomials_checked = 0;
  bool square_commutes = false;
  bool toeplitz_isometry = false;
  std::vector<std::string> failures;

  bool passed() const {
    return products_vanish && chi2_ideal_ok && square_commutes && toeplitz_isometry;
  }
  std::string to_json_text() const;
};

QlpbReport verify_qlpb(int l, int max_len);

}  // namespace trimgraph

#endif
