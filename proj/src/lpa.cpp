#include "trimgraph/lpa.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "trimgraph/trim.hpp"

namespace trimgraph {

namespace {

// Declaration-first outgoing edge; the CK2 relation at v is used to
// eliminate monomials whose legs both end in it.
int special_edge(const Graph& g, int v) { return g.out_edges(v)[0]; }

bool is_prefix(const Graph& g, const Path& p, const Path& q) {
  // p a prefix of q; the empty path (v) is a prefix of q iff q starts at v
  if (p.edges.empty()) return p.base == q.source(g);
  if (p.edges.size() > q.edges.size()) return false;
  return std::equal(p.edges.begin(), p.edges.end(), q.edges.begin());
}

Path suffix_after(const Graph& g, const Path& q, const Path& p) {
  Path r;
  r.edges.assign(q.edges.begin() + p.edges.size(), q.edges.end());
  if (r.edges.empty()) r.base = q.range(g);
  return r;
}

Path compose_paths(const Graph& g, const Path& a, const Path& b) {
  if (a.edges.empty()) return b;
  if (b.edges.empty()) return a;
  Path r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

}  // namespace

std::string Monomial::to_string(const Graph& g) const {
  if (is_diagonal() && x.length() == 0) return "P[" + g.vertex_id(x.base) + "]";
  auto leg = [&](const Path& p, bool starred) {
    std::string s = starred ? "S*[" : "S[";
    for (size_t i = 0; i < p.edges.size(); ++i)
      s += (i ? "," : "") + g.edge(p.edges[i]).id;
    return s + "]";
  };
  std::string out;
  if (x.length() > 0) out += leg(x, false);
  if (y.length() > 0) out += (out.empty() ? "" : "*") + leg(y, true);
  if (out.empty()) out = "P[" + g.vertex_id(x.base) + "]";
  else if (x.length() == 0) out = "P[" + g.vertex_id(x.base) + "]*" + out;
  return out;
}

LpaElement LpaElement::unit(const Graph& g) {
  LpaElement a(&g);
  for (int v = 0; v < g.num_vertices(); ++v)
    a.add_term(Path::vertex(v), Path::vertex(v), Laurent(1));
  return a;
}

LpaElement LpaElement::vertex_projection(const Graph& g, int v) {
  LpaElement a(&g);
  a.add_term(Path::vertex(v), Path::vertex(v), Laurent(1));
  return a;
}

LpaElement LpaElement::edge_isometry(const Graph& g, int e) {
  LpaElement a(&g);
  Path x;
  x.edges = {e};
  a.add_term(x, Path::vertex(g.edge(e).rng), Laurent(1));
  return a;
}

LpaElement LpaElement::path_isometry(const Graph& g, const Path& p) {
  LpaElement a(&g);
  a.add_term(p, Path::vertex(p.range(g)), Laurent(1));
  return a;
}

LpaElement LpaElement::monomial(const Graph& g, const Path& x, const Path& y, Laurent coeff) {
  if (x.range(g) != y.range(g)) throw Error("monomial legs have different ranges");
  LpaElement a(&g);
  a.add_term(x, y, coeff);
  return a;
}

void LpaElement::add_term(const Path& x, const Path& y, const Laurent& c) {
  if (c.is_zero()) return;
  std::vector<std::pair<Monomial, Laurent>> work{{Monomial{x, y}, c}};
  while (!work.empty()) {
    auto [m, coeff] = std::move(work.back());
    work.pop_back();
    // canonical base: nonempty paths carry none, so equal paths compare equal
    if (!m.x.edges.empty()) m.x.base = -1;
    if (!m.y.edges.empty()) m.y.base = -1;
    const auto& mx = m.x.edges;
    const auto& my = m.y.edges;
    if (!mx.empty() && !my.empty() && mx.back() == my.back() &&
        mx.back() == special_edge(*g_, g_->edge(mx.back()).src)) {
      int v = g_->edge(mx.back()).src;
      Path px = m.x, py = m.y;
      px.edges.pop_back();
      py.edges.pop_back();
      if (px.edges.empty()) px.base = v;
      if (py.edges.empty()) py.base = v;
      work.push_back({Monomial{px, py}, coeff});
      for (int e : g_->out_edges(v)) {
        if (e == special_edge(*g_, v)) continue;
        Path qx = px, qy = py;
        qx.edges.push_back(e);
        qy.edges.push_back(e);
        work.push_back({Monomial{qx, qy}, -coeff});
      }
      continue;
    }
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), coeff);
    } else if ((it->second += coeff).is_zero()) {
      terms_.erase(it);
    }
  }
}

LpaElement LpaElement::operator+(const LpaElement& o) const {
  if (g_ != o.g_ && !terms_.empty() && !o.terms_.empty()) throw Error("graph mismatch in +");
  LpaElement r = terms_.empty() ? LpaElement(o.g_) : *this;
  if (terms_.empty()) r = o;
  else
    for (const auto& [m, c] : o.terms_) r.add_term(m.x, m.y, c);
  return r;
}

LpaElement LpaElement::operator-(const LpaElement& o) const { return *this + o.scale(Laurent(-1)); }

LpaElement LpaElement::operator*(const LpaElement& o) const {
  if (g_ != o.g_) throw Error("graph mismatch in *");
  LpaElement r(g_);
  const Graph& g = *g_;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      // S_y1* S_x2 collapses by path division
      if (is_prefix(g, m1.y, m2.x)) {
        Path rest = suffix_after(g, m2.x, m1.y);
        r.add_term(compose_paths(g, m1.x, rest), m2.y, c1 * c2);
      } else if (is_prefix(g, m2.x, m1.y)) {
        Path rest = suffix_after(g, m1.y, m2.x);
        r.add_term(m1.x, compose_paths(g, m2.y, rest), c1 * c2);
      }
    }
  }
  return r;
}

LpaElement LpaElement::star() const {
  LpaElement r(g_);
  for (const auto& [m, c] : terms_) r.add_term(m.y, m.x, c.conj());
  return r;
}

LpaElement LpaElement::scale(const Laurent& c) const {
  LpaElement r(g_);
  for (const auto& [m, co] : terms_) r.add_term(m.x, m.y, co * c);
  return r;
}

bool LpaElement::operator==(const LpaElement& o) const { return terms_ == o.terms_; }

std::set<int> LpaElement::gauge_degrees() const {
  std::set<int> degs;
  for (const auto& [m, c] : terms_)
    for (const auto& [e, co] : c.coeffs()) degs.insert(m.gauge_degree() + e);
  return degs;
}

LpaElement LpaElement::gauge_invariant_part() const {
  LpaElement r(g_);
  for (const auto& [m, c] : terms_)
    for (const auto& [e, co] : c.coeffs())
      if (m.gauge_degree() + e == 0) r.add_term(m.x, m.y, Laurent::term(co, e));
  return r;
}

bool LpaElement::is_projection() const { return *this == star() && *this == *this * *this; }

bool LpaElement::is_isometry() const {
  return !terms_.empty() && star() * *this == unit(*g_);
}

bool LpaElement::is_unitary() const {
  if (terms_.empty()) return false;
  LpaElement one = unit(*g_);
  return star() * *this == one && *this * star() == one;
}

std::string LpaElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    if (c.is_one()) out << m.to_string(*g_);
    else if (c.is_monomial()) out << c.to_string() << "*" << m.to_string(*g_);
    else out << "(" << c.to_string() << ")*" << m.to_string(*g_);
    first = false;
  }
  return out.str();
}

std::map<std::string, LpaElement> generators(const Graph& g) {
  std::map<std::string, LpaElement> gens;
  for (int v = 0; v < g.num_vertices(); ++v)
    gens["P_" + g.vertex_id(v)] = LpaElement::vertex_projection(g, v);
  for (int e = 0; e < g.num_edges(); ++e)
    gens["S_" + g.edge(e).id] = LpaElement::edge_isometry(g, e);
  gens["1"] = LpaElement::unit(g);
  return gens;
}

std::vector<Monomial> ideal_monomials(const Graph& g, const VertexSet& h, int max_len) {
  if (!g.is_hereditary(h)) throw Error("ideal_monomials: set is not hereditary");
  VertexSet sat = g.saturate(h);
  std::vector<Path> paths = enumerate_paths(g, max_len, sat);
  std::vector<Monomial> out;
  for (const auto& x : paths) {
    for (const auto& y : paths) {
      if (x.range(g) != y.range(g)) continue;
      if (!x.edges.empty() && !y.edges.empty() && x.edges.back() == y.edges.back() &&
          x.edges.back() == special_edge(g, g.edge(x.edges.back()).src))
        continue;  // not a basis monomial
      out.push_back(Monomial{x, y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LpaElement GenHom::apply_monomial(const Monomial& m) const {
  LpaElement acc = LpaElement::unit(*target);
  for (int e : m.x.edges) acc = acc * edge_images[e];
  acc = acc * vertex_images[m.x.range(*source)];
  for (auto it = m.y.edges.rbegin(); it != m.y.edges.rend(); ++it)
    acc = acc * edge_images[*it].star();
  return acc;
}

LpaElement GenHom::apply(const LpaElement& a) const {
  LpaElement r(target);
  for (const auto& [m, c] : a.terms())
    r = r + apply_monomial(m).scale(c.substitute_u_pow(u_exponent));
  return r;
}

GenHom compose(const GenHom& g, const GenHom& f) {
  if (f.target != g.source) throw Error("compose: hom targets do not match");
  GenHom h;
  h.source = f.source;
  h.target = g.target;
  h.u_exponent = f.u_exponent * g.u_exponent;
  for (const auto& a : f.vertex_images) h.vertex_images.push_back(g.apply(a));
  for (const auto& a : f.edge_images) h.edge_images.push_back(g.apply(a));
  return h;
}

bool check_hom_well_defined(const GenHom& h, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Graph& src = *h.source;
  const Graph& tgt = *h.target;
  if (static_cast<int>(h.vertex_images.size()) != src.num_vertices() ||
      static_cast<int>(h.edge_images.size()) != src.num_edges())
    return fail("missing generator images");

  for (int v = 0; v < src.num_vertices(); ++v) {
    const auto& p = h.vertex_images[v];
    if (!p.is_zero() && !p.is_projection())
      return fail("image of P_" + src.vertex_id(v) + " is not a projection");
    for (int w = v + 1; w < src.num_vertices(); ++w)
      if (!(p * h.vertex_images[w]).is_zero())
        return fail("images of P_" + src.vertex_id(v) + " and P_" + src.vertex_id(w) +
                    " are not orthogonal");
  }
  LpaElement sum(&tgt);
  for (const auto& p : h.vertex_images) sum = sum + p;
  if (!(sum == LpaElement::unit(tgt))) return fail("unit does not map to unit");

  for (int e = 0; e < src.num_edges(); ++e) {
    const auto& s = h.edge_images[e];
    if (!(h.vertex_images[src.edge(e).src] * s == s) ||
        !(s * h.vertex_images[src.edge(e).rng] == s))
      return fail("image of S_" + src.edge(e).id + " violates the support relations");
    for (int f2 = 0; f2 < src.num_edges(); ++f2) {
      LpaElement prod = s.star() * h.edge_images[f2];
      LpaElement expected =
          (e == f2) ? h.vertex_images[src.edge(e).rng] : LpaElement::zero(tgt);
      if (!(prod == expected))
        return fail("(CK1) fails on S_" + src.edge(e).id + "* S_" + src.edge(f2).id);
    }
  }
  for (int v = 0; v < src.num_vertices(); ++v) {
    if (src.is_sink(v)) continue;
    LpaElement ck2(&tgt);
    for (int e : src.out_edges(v)) ck2 = ck2 + h.edge_images[e] * h.edge_images[e].star();
    if (!(ck2 == h.vertex_images[v]))
      return fail("(CK2) fails at vertex " + src.vertex_id(v));
  }
  return true;
}

GenHom quotient_hom(const Graph& e, const Graph& quotient, const VertexSet& h) {
  GenHom q;
  q.source = &e;
  q.target = &quotient;
  for (int v = 0; v < e.num_vertices(); ++v) {
    if (h.count(v)) q.vertex_images.push_back(LpaElement::zero(quotient));
    else
      q.vertex_images.push_back(
          LpaElement::vertex_projection(quotient, quotient.vertex_index(e.vertex_id(v))));
  }
  for (int ed = 0; ed < e.num_edges(); ++ed) {
    if (h.count(e.edge(ed).rng)) q.edge_images.push_back(LpaElement::zero(quotient));
    else {
      auto idx = quotient.find_edge(e.edge(ed).id);
      if (!idx) throw Error("quotient graph misses edge " + e.edge(ed).id);
      q.edge_images.push_back(LpaElement::edge_isometry(quotient, *idx));
    }
  }
  return q;
}

GenHom gauge_coaction(const Graph& e) {
  GenHom d;
  d.source = &e;
  d.target = &e;
  for (int v = 0; v < e.num_vertices(); ++v)
    d.vertex_images.push_back(LpaElement::vertex_projection(e, v));
  for (int ed = 0; ed < e.num_edges(); ++ed)
    d.edge_images.push_back(LpaElement::edge_isometry(e, ed).scale(Laurent::u_pow(1)));
  return d;
}

CanonicalHoms canonical_homs(const Graph& e, int vbar) {
  TrimResult tr = trim(e, vbar);
  CanonicalHoms ch;
  ch.e_prime = std::make_shared<Graph>(std::move(tr.e_prime));
  ch.e_dprime = std::make_shared<Graph>(std::move(tr.e_dprime));
  const Graph& ep = *ch.e_prime;
  const Graph& edd = *ch.e_dprime;

  ch.pi1 = quotient_hom(e, edd, VertexSet{vbar});
  ch.pi2 = quotient_hom(ep, edd, VertexSet{ep.vertex_index(e.vertex_id(vbar))});
  ch.delta = gauge_coaction(edd);
  ch.pi2_tensor_id = ch.pi2;

  int ebar = check_trimmable(e, vbar).ebar;
  GenHom f;
  f.source = &e;
  f.target = &ep;
  for (int v = 0; v < e.num_vertices(); ++v)
    f.vertex_images.push_back(
        LpaElement::vertex_projection(ep, ep.vertex_index(e.vertex_id(v))));
  for (int ed = 0; ed < e.num_edges(); ++ed) {
    if (ed == ebar) {
      f.edge_images.push_back(
          LpaElement::vertex_projection(ep, ep.vertex_index(e.vertex_id(vbar)))
              .scale(Laurent::u_pow(1)));
    } else {
      f.edge_images.push_back(
          LpaElement::edge_isometry(ep, *ep.find_edge(e.edge(ed).id))
              .scale(Laurent::u_pow(1)));
    }
  }
  ch.f = std::move(f);
  return ch;
}

bool diagram_commutes(const Graph& e, int vbar) {
  CanonicalHoms ch = canonical_homs(e, vbar);
  for (const auto& [name, gen] : generators(e)) {
    LpaElement lhs = ch.delta.apply(ch.pi1.apply(gen));
    LpaElement rhs = ch.pi2_tensor_id.apply(ch.f.apply(gen));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

namespace {
Path translate_path(const Graph& from, const Graph& to, const Path& p) {
  Path q;
  if (p.edges.empty()) {
    q.base = to.vertex_index(from.vertex_id(p.base));
    return q;
  }
  for (int e : p.edges) {
    auto idx = to.find_edge(from.edge(e).id);
    if (!idx) throw Error("path edge missing in target graph: " + from.edge(e).id);
    q.edges.push_back(*idx);
  }
  return q;
}
}  // namespace

KernelInclusionReport kernel_inclusion_check(const Graph& e, int vbar, int max_len,
                                             int max_u_deg) {
  CanonicalHoms ch = canonical_homs(e, vbar);
  const Graph& ep = *ch.e_prime;
  int vbar_ep = ep.vertex_index(e.vertex_id(vbar));
  int ebar = check_trimmable(e, vbar).ebar;

  KernelInclusionReport rep;
  rep.max_len = max_len;
  rep.max_u_deg = max_u_deg;
  LpaElement sbar = LpaElement::edge_isometry(e, ebar);

  for (const auto& m : ideal_monomials(ep, VertexSet{vbar_ep}, max_len)) {
    for (int mm = -max_u_deg; mm <= max_u_deg; ++mm) {
      int k = mm - m.gauge_degree();
      Path x = translate_path(ep, e, m.x);
      Path y = translate_path(ep, e, m.y);
      // S_x S_ebar^k S_y*, with negative powers through the star (S_ebar is
      // normal, so this is the inverse on its support)
      LpaElement mid = LpaElement::vertex_projection(e, vbar);
      for (int i = 0; i < (k >= 0 ? k : -k); ++i)
        mid = mid * (k >= 0 ? sbar : sbar.star());
      LpaElement lift = LpaElement::path_isometry(e, x) * mid *
                        LpaElement::path_isometry(e, y).star();
      LpaElement image = ch.f.apply(lift);
      LpaElement expected =
          LpaElement::monomial(ep, m.x, m.y, Laurent::u_pow(mm));
      KernelInclusionRow row;
      row.monomial = m.to_string(ep);
      row.u_exp = mm;
      row.lift = lift.to_string();
      row.matches = image == expected;
      if (!row.matches) rep.passed = false;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

// --- element parser ------------------------------------------------------

namespace {

struct ElementParser {
  const Graph& g;
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("element syntax error at position " + std::to_string(pos) + ": " + msg);
  }

  long long parse_int() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::stoll(s.substr(start, pos - start));
  }

  std::vector<std::string> parse_bracket_list() {
    if (!eat('[')) fail("expected '['");
    std::vector<std::string> items;
    skip_ws();
    if (eat(']')) return items;
    for (;;) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && s[pos] != ',' && s[pos] != ']' &&
             !std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (pos == start) fail("expected identifier");
      items.push_back(s.substr(start, pos - start));
      if (eat(']')) break;
      if (!eat(',')) fail("expected ',' or ']'");
    }
    return items;
  }

  Path path_from_ids(const std::vector<std::string>& ids) {
    Path p;
    if (ids.empty()) fail("empty path; use P[v] for a vertex projection");
    for (const auto& id : ids) {
      auto e = g.find_edge(id);
      if (!e) fail("unknown edge: " + id);
      if (!p.edges.empty() && g.edge(p.edges.back()).rng != g.edge(*e).src)
        fail("edges do not compose: " + id);
      p.edges.push_back(*e);
    }
    return p;
  }

  LpaElement parse_factor() {
    skip_ws();
    if (pos >= s.size()) fail("expected factor");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      LpaElement e = parse_expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long n = parse_int();
      if (n == 1) return LpaElement::unit(g);
      return LpaElement::unit(g).scale(Laurent(n));
    }
    if (c == 'u') {
      ++pos;
      int exp = 1;
      if (eat('^')) exp = static_cast<int>(parse_int());
      return LpaElement::unit(g).scale(Laurent::u_pow(exp));
    }
    if (c == 'P') {
      ++pos;
      auto ids = parse_bracket_list();
      if (ids.size() != 1) fail("P[] takes one vertex");
      auto v = g.find_vertex(ids[0]);
      if (!v) fail("unknown vertex: " + ids[0]);
      return LpaElement::vertex_projection(g, *v);
    }
    if (c == 'S') {
      ++pos;
      bool starred = eat('*');
      Path p = path_from_ids(parse_bracket_list());
      LpaElement e = LpaElement::path_isometry(g, p);
      return starred ? e.star() : e;
    }
    fail("unexpected character");
  }

  LpaElement parse_term() {
    LpaElement acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  LpaElement parse_expression() {
    skip_ws();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    LpaElement acc = parse_term();
    if (neg) acc = acc.scale(Laurent(-1));
    for (;;) {
      skip_ws();
      if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) break;
      bool minus = s[pos] == '-';
      ++pos;
      LpaElement t = parse_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }
};

}  // namespace

LpaElement parse_element(const Graph& g, const std::string& text) {
  ElementParser p{g, text};
  LpaElement e = p.parse_expression();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace trimgraph
