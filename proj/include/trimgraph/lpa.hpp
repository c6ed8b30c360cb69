#ifndef TRIMGRAPH_LPA_HPP
#define TRIMGRAPH_LPA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "trimgraph/graph.hpp"
#include "trimgraph/laurent.hpp"

namespace trimgraph {

// S_x S_y* with r(x) = r(y); x = y = (v) represents the vertex projection P_v.
struct Monomial {
  Path x, y;
  auto operator<=>(const Monomial& o) const = default;
  int gauge_degree() const { return x.length() - y.length(); }
  bool is_diagonal() const { return x == y; }
  std::string to_string(const Graph& g) const;
};

// Element of the Leavitt path algebra of a finite graph, with integer
// Laurent coefficients in u standing for the C(S^1) tensorand. Terms are
// kept in the standard normal form: x and y never both end in the special
// (declaration-first) outgoing edge of that edge's source.
class LpaElement {
 public:
  LpaElement() = default;
  explicit LpaElement(const Graph* g) : g_(g) {}

  static LpaElement zero(const Graph& g) { return LpaElement(&g); }
  static LpaElement unit(const Graph& g);
  static LpaElement vertex_projection(const Graph& g, int v);
  static LpaElement edge_isometry(const Graph& g, int e);  // S_e
  static LpaElement path_isometry(const Graph& g, const Path& p);  // S_p
  static LpaElement monomial(const Graph& g, const Path& x, const Path& y,
                             Laurent coeff = Laurent(1));

  const Graph* graph() const { return g_; }
  const std::map<Monomial, Laurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LpaElement operator+(const LpaElement& o) const;
  LpaElement operator-(const LpaElement& o) const;
  LpaElement operator*(const LpaElement& o) const;
  LpaElement star() const;
  LpaElement scale(const Laurent& c) const;
  bool operator==(const LpaElement& o) const;

  std::set<int> gauge_degrees() const;  // |x| - |y| plus the u exponent
  LpaElement gauge_invariant_part() const;

  bool is_projection() const;
  bool is_isometry() const;
  bool is_unitary() const;

  std::string to_string() const;

  // Inserts c * S_x S_y*, rewriting into normal form.
  void add_term(const Path& x, const Path& y, const Laurent& c);

 private:
  const Graph* g_ = nullptr;
  std::map<Monomial, Laurent> terms_;
};

// CK generators: P_<v> for vertices, S_<e> for edges, plus the unit "1".
std::map<std::string, LpaElement> generators(const Graph& g);

// All normal monomials S_x S_y* with legs of length <= max_len and common
// range in the saturation of h; h must be hereditary.
std::vector<Monomial> ideal_monomials(const Graph& g, const VertexSet& h, int max_len);

// Generator-level *-homomorphism, determined by images of P_v and S_e and
// the exponent k of the coefficient substitution u -> u^k.
struct GenHom {
  const Graph* source = nullptr;
  const Graph* target = nullptr;
  std::vector<LpaElement> vertex_images;
  std::vector<LpaElement> edge_images;
  int u_exponent = 1;

  LpaElement apply(const LpaElement& a) const;
  LpaElement apply_monomial(const Monomial& m) const;
};

GenHom compose(const GenHom& g, const GenHom& f);

// Checks that the images form a Leavitt E-family in the target: orthogonal
// projection images, edge compatibilities, (CK1), (CK2), unit to unit.
bool check_hom_well_defined(const GenHom& h, std::string* why = nullptr);

// Quotient hom C*(E) -> C*(E/H): kills generators over H, fixes the rest.
GenHom quotient_hom(const Graph& e, const Graph& quotient, const VertexSet& h);
// Gauge coaction delta on C*(E): S_e -> S_e * u.
GenHom gauge_coaction(const Graph& e);

struct CanonicalHoms {
  // heap-held so the GenHom graph pointers stay valid across moves
  std::shared_ptr<const Graph> e_prime, e_dprime;
  GenHom pi1;            // C*(E) -> C*(E'')
  GenHom pi2;            // C*(E') -> C*(E'')
  GenHom delta;          // C*(E'') -> C*(E'') x u
  GenHom f;              // C*(E) -> C*(E') x u; f(S_ebar) = P_vbar * u
  GenHom pi2_tensor_id;  // same images as pi2, u fixed
};

CanonicalHoms canonical_homs(const Graph& e, int vbar);

// delta . pi1 == (pi2 x id) . f on every generator of C*(E).
bool diagram_commutes(const Graph& e, int vbar);

struct KernelInclusionRow {
  std::string monomial;
  int u_exp = 0;
  std::string lift;
  bool matches = false;
};
struct KernelInclusionReport {
  bool passed = true;
  int max_len = 0, max_u_deg = 0;
  std::vector<KernelInclusionRow> rows;
};

// For every ideal monomial of I_{E'}(vbar) with legs <= max_len and every
// |m| <= max_u_deg, builds the lift S_x S_ebar^{m-(|x|-|y|)} S_y* in C*(E)
// (negative powers through S_ebar*) and checks that f maps it to the
// monomial times u^m.
KernelInclusionReport kernel_inclusion_check(const Graph& e, int vbar, int max_len,
                                             int max_u_deg);

// CLI element syntax: `2*u^-1*S[e1,e2]*S*[e3] + P[v0]`.
LpaElement parse_element(const Graph& g, const std::string& text);

}  // namespace trimgraph

#endif
