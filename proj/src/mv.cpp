#include "trimgraph/mv.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "json.hpp"
#include "trimgraph/graphs.hpp"

namespace trimgraph {

GenHom identity_hom(const Graph& g) {
  GenHom h;
  h.source = &g;
  h.target = &g;
  for (int v = 0; v < g.num_vertices(); ++v)
    h.vertex_images.push_back(LpaElement::vertex_projection(g, v));
  for (int e = 0; e < g.num_edges(); ++e)
    h.edge_images.push_back(LpaElement::edge_isometry(g, e));
  return h;
}

// --- pullback ------------------------------------------------------------

PullbackDiagram assemble_pullback(const Graph& e, int vbar, int max_len, int max_u_deg) {
  PullbackDiagram d;
  d.cert = check_trimmable(e, vbar);
  if (!d.cert.ok()) throw Error("graph is not trimmable at " + e.vertex_id(vbar));
  d.homs = canonical_homs(e, vbar);
  d.commutes = true;
  for (const auto& [name, gen] : generators(e)) {
    LpaElement lhs = d.homs.delta.apply(d.homs.pi1.apply(gen));
    LpaElement rhs = d.homs.pi2_tensor_id.apply(d.homs.f.apply(gen));
    if (!(lhs == rhs)) d.commutes = false;
  }
  d.f_well_defined = check_hom_well_defined(d.homs.f, &d.f_why);
  d.kernel_inclusion = kernel_inclusion_check(e, vbar, max_len, max_u_deg);
  return d;
}

std::string PullbackDiagram::to_json_text(const Graph& e) const {
  nlohmann::json j;
  j["vbar"] = e.vertex_id(cert.vbar);
  j["ebar"] = e.edge(cert.ebar).id;
  j["commutes"] = commutes;
  j["f_well_defined"] = f_well_defined;
  if (!f_well_defined) j["f_failure"] = f_why;
  j["kernel_inclusion"] = {{"passed", kernel_inclusion.passed},
                           {"max_len", kernel_inclusion.max_len},
                           {"max_u_deg", kernel_inclusion.max_u_deg},
                           {"rows", kernel_inclusion.rows.size()}};
  j["passed"] = passed();
  return j.dump();
}

// --- direct sums and the AF sequence -------------------------------------

DirectSum direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
  DirectSum d;
  FGAbelianGroup& g = d.group;
  int ta = a.torsion_count(), tb = b.torsion_count();
  for (const auto& x : a.torsion) g.torsion.push_back(x);
  for (const auto& x : b.torsion) g.torsion.push_back(x);
  g.free_rank = a.free_rank + b.free_rank;
  for (int i = 0; i < a.coord_dim(); ++i)
    d.a_pos.push_back(i < ta ? i : ta + tb + (i - ta));
  for (int i = 0; i < b.coord_dim(); ++i)
    d.b_pos.push_back(i < tb ? ta + i : ta + static_cast<int>(a.free_rank) + tb +
                                            (i - tb));
  for (const auto& s : a.ambient_labels) g.ambient_labels.push_back(s);
  for (const auto& s : b.ambient_labels) g.ambient_labels.push_back(s);
  g.ambient_to_coords = IntMatrix(g.coord_dim(), a.ambient_dim() + b.ambient_dim());
  g.ambient_reps = IntMatrix(a.ambient_dim() + b.ambient_dim(), g.coord_dim());
  for (int i = 0; i < a.coord_dim(); ++i)
    for (int j = 0; j < a.ambient_dim(); ++j) {
      g.ambient_to_coords.at(d.a_pos[i], j) = a.ambient_to_coords.at(i, j);
      g.ambient_reps.at(j, d.a_pos[i]) = a.ambient_reps.at(j, i);
    }
  for (int i = 0; i < b.coord_dim(); ++i)
    for (int j = 0; j < b.ambient_dim(); ++j) {
      g.ambient_to_coords.at(d.b_pos[i], a.ambient_dim() + j) = b.ambient_to_coords.at(i, j);
      g.ambient_reps.at(a.ambient_dim() + j, d.b_pos[i]) = b.ambient_reps.at(j, i);
    }
  return d;
}

std::vector<std::string> AfSequence::node_labels() const {
  return {"K1(E')", "K1(E'')", "K0(fix E)", "K0(fix E'') + K0(E')", "K0(E'')"};
}

AfSequence assemble_fixed_sequence(const Graph& e, int vbar, const FixedKInput& kdata) {
  AfSequence s;
  s.e = std::make_shared<Graph>(e);
  s.vbar = vbar;
  s.homs = canonical_homs(*s.e, vbar);
  s.e_prime = s.homs.e_prime;
  s.e_dprime = s.homs.e_dprime;
  s.kp = k_groups(*s.e_prime);
  s.kd = k_groups(*s.e_dprime);
  s.input = kdata;

  if (kdata.k1_map.rows() != s.kd.k1.coord_dim() ||
      kdata.k1_map.cols() != s.kp.k1.coord_dim())
    throw Error("K1 map has the wrong shape for this trim square");
  s.alpha = GroupHom{s.kp.k1, s.kd.k1, kdata.k1_map};

  if (!kdata.fix_dprime) return s;
  const FGAbelianGroup& fix = *kdata.fix_dprime;

  s.middle = direct_sum(fix, s.kp.k0);

  // iota*: the fixed-subalgebra generators [P_v] include into K0(E'')
  IntMatrix iota_amb(s.kd.k0.coord_dim(), fix.ambient_dim());
  for (int j = 0; j < fix.ambient_dim(); ++j) {
    int v = s.e_dprime->vertex_index(fix.ambient_labels.at(j));
    IntVec cls = class_of_projection(s.kd, *s.e_dprime,
                                     LpaElement::vertex_projection(*s.e_dprime, v));
    for (int i = 0; i < iota_amb.rows(); ++i) iota_amb.at(i, j) = cls[i];
  }
  IntMatrix iota = iota_amb * fix.ambient_reps;
  GroupHom pi2star = induced_k0_map(s.homs.pi2, s.kp, s.kd);

  IntMatrix bmat(s.kd.k0.coord_dim(), s.middle->group.coord_dim());
  for (int j = 0; j < fix.coord_dim(); ++j)
    for (int i = 0; i < bmat.rows(); ++i) bmat.at(i, s.middle->a_pos[j]) = iota.at(i, j);
  for (int j = 0; j < s.kp.k0.coord_dim(); ++j)
    for (int i = 0; i < bmat.rows(); ++i)
      bmat.at(i, s.middle->b_pos[j]) = -pi2star.matrix.at(i, j);
  s.b = GroupHom{s.middle->group, s.kd.k0, bmat};

  // images of the unknown node's vertex-projection generators
  IntMatrix vim(s.middle->group.coord_dim(), s.e->num_vertices());
  for (int v = 0; v < s.e->num_vertices(); ++v) {
    if (v != vbar) {
      // left component: [P_v] of the fixed subalgebra of E''
      const std::string& id = s.e->vertex_id(v);
      auto it = std::find(fix.ambient_labels.begin(), fix.ambient_labels.end(), id);
      if (it == fix.ambient_labels.end())
        throw Error("fixed-point group lacks a generator for vertex " + id);
      IntVec cls = fix.class_of_ambient(
          static_cast<int>(it - fix.ambient_labels.begin()));
      for (int i = 0; i < fix.coord_dim(); ++i) vim.at(s.middle->a_pos[i], v) = cls[i];
    }
    int vp = s.e_prime->vertex_index(s.e->vertex_id(v));
    IntVec cls = class_of_projection(s.kp, *s.e_prime,
                                     LpaElement::vertex_projection(*s.e_prime, vp));
    for (int i = 0; i < s.kp.k0.coord_dim(); ++i) vim.at(s.middle->b_pos[i], v) = cls[i];
  }
  s.vertex_images_in_middle = vim;
  return s;
}

FixedK0Result solve_fixed_k0(const AfSequence& s) {
  FixedK0Result r;
  r.connecting_cokernel = cokernel(s.input.k1_map);

  if (s.middle) {
    if (!s.middle->group.is_free()) {
      r.provenance = "middle node has torsion; extension problem left unsolved";
      return r;
    }
    GroupHom b = *s.b;
    IntMatrix gens = IntMatrix::from_columns(s.middle->group.coord_dim(),
                                             hom_kernel_generators(b));
    IntMatrix canon = column_span_canonical(gens);
    for (int j = 0; j < canon.cols(); ++j) r.kernel_basis_middle.push_back(canon.column(j));
    // ker b is free (subgroup of a free group), so the extension splits
    r.group.torsion = r.connecting_cokernel.torsion;
    r.group.free_rank = r.connecting_cokernel.free_rank + canon.cols();
    r.group.ambient_to_coords = IntMatrix::identity(r.group.coord_dim());
    r.group.ambient_reps = r.group.ambient_to_coords;
    r.is_fg = true;
    r.solved = true;
    r.provenance = "coker(K1(E')->K1(E'')) + ker(K0(fix E'') + K0(E') -> K0(E''))";
    return r;
  }

  // non-finitely-generated fixed slot: conservative symbolic rules
  const std::string& label = s.input.fix_dprime_label;
  if (label.empty()) {
    r.provenance = "no fixed-point K0 data for E''";
    return r;
  }
  if (s.kd.k0.is_zero()) {
    // the map to K0(E'') vanishes, so the middle node is the kernel
    std::string parts;
    if (!r.connecting_cokernel.is_zero()) parts = r.connecting_cokernel.to_string();
    if (!s.kp.k0.is_zero())
      parts += (parts.empty() ? "" : " + ") + s.kp.k0.to_string();
    parts += (parts.empty() ? "" : " + ") + label;
    r.label = parts;
    r.solved = true;
    r.provenance = "K0(E'') = 0: fixed K0 is the whole middle node plus the connecting image";
    return r;
  }
  if (label == "FreeCountable" && r.connecting_cokernel.is_zero() && s.kd.k0.is_free()) {
    // kernel of a surjection from a countable free sum onto a f.g. free
    // group is again countable free of infinite rank
    r.label = "FreeCountable";
    r.solved = true;
    r.provenance = "free countable middle onto a free f.g. base; kernel stays free countable";
    return r;
  }
  r.provenance = "no rule applies to fixed slot " + label;
  return r;
}

bool af_exactness(const AfSequence& s, const FGAbelianGroup& x, const GroupHom& boundary,
                  const GroupHom& a_map, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!s.middle || !s.b) return fail("sequence has a non-finitely-generated node");
  if (!s.alpha->well_defined() || !boundary.well_defined() || !a_map.well_defined())
    return fail("a map does not respect torsion relations");
  if (!is_injective(*s.alpha)) return fail("not exact at K1(E')");
  if (!exactness_check(*s.alpha, boundary)) return fail("not exact at K1(E'')");
  if (!exactness_check(boundary, a_map)) return fail("not exact at K0(fix E)");
  if (!exactness_check(a_map, *s.b)) return fail("not exact at the middle node");
  if (!is_surjective(*s.b)) return fail("not exact at K0(E'')");
  return true;
}

// --- Milnor idempotent ---------------------------------------------------

MilnorResult milnor_idempotent(const MilnorData& md) {
  MilnorResult r;
  const Graph& base = *md.base;
  const Graph& lift = *md.sigma.source;
  std::ostringstream rep;

  r.u_unitary = md.u.is_unitary();
  if (!r.u_unitary) rep << "u is not unitary; ";
  r.lifts_ok = md.sigma.apply(md.c) == md.u && md.sigma.apply(md.d) == md.u.star();
  if (!r.lifts_ok) rep << "sigma(c) != u or sigma(d) != u*; ";

  LpaElement one = LpaElement::unit(lift);
  LpaElement t = md.c * (one.scale(Laurent(2)) - md.d * md.c);
  LpaElement rest = one - md.d * md.c;
  LpaElement e11 = t * md.d;
  LpaElement e12 = t * rest;
  LpaElement e21 = rest * md.d;
  LpaElement e22 = rest * rest;

  LpaElement base_one = LpaElement::unit(base);
  LpaElement base_zero = LpaElement::zero(base);
  r.p[0][0] = {base_one, e11};
  r.p[0][1] = {base_zero, e12};
  r.p[1][0] = {base_zero, e21};
  r.p[1][1] = {base_zero, e22};
  r.top_left = e11;

  r.pairs_agree = md.sigma.apply(e11) == base_one && md.sigma.apply(e12).is_zero() &&
                  md.sigma.apply(e21).is_zero() && md.sigma.apply(e22).is_zero();
  if (!r.pairs_agree) rep << "pair components disagree over the base; ";

  r.self_adjoint = e11 == e11.star() && e22 == e22.star() && e12 == e21.star();
  if (!r.self_adjoint) rep << "p != p*; ";

  r.idempotent = (e11 * e11 + e12 * e21) == e11 && (e11 * e12 + e12 * e22) == e12 &&
                 (e21 * e11 + e22 * e21) == e21 && (e21 * e12 + e22 * e22) == e22;
  if (!r.idempotent) {
    rep << "p^2 != p, defect " << ((e11 * e11 + e12 * e21) - e11).to_string() << "; ";
  }

  r.defect = one - e11;
  r.expected_shape = e12.is_zero() && e21.is_zero() && e22.is_zero() &&
                     r.defect.is_projection() && md.sigma.apply(r.defect).is_zero();
  if (!r.expected_shape) rep << "matrix is not of the expected clutching shape; ";

  r.report = rep.str();
  return r;
}

MilnorResult trim_milnor(const Graph& e, int vbar, std::string* lift_desc) {
  CanonicalHoms homs = canonical_homs(e, vbar);
  const Graph& ep = *homs.e_prime;
  const Graph& ed = *homs.e_dprime;
  int vbar_p = ep.vertex_index(e.vertex_id(vbar));
  int w = -1, loop = -1, cross = -1;
  for (int v = 0; v < ep.num_vertices() && w < 0; ++v) {
    if (v == vbar_p) continue;
    // in E'' the vertex must keep exactly its loop, so every other
    // outgoing edge has to land on vbar
    int l = -1, c = -1;
    bool clean = true;
    for (int edge : ep.out_edges(v)) {
      if (ep.edge(edge).rng == v) {
        if (l >= 0) clean = false;
        l = edge;
      } else if (ep.edge(edge).rng == vbar_p) {
        c = edge;
      } else {
        clean = false;
      }
    }
    if (clean && l >= 0 && c >= 0) { w = v; loop = l; cross = c; }
  }
  if (w < 0)
    throw Error("no vertex emits exactly a loop plus edges into " + e.vertex_id(vbar));
  K1Unitary ku = distinguished_k1_unitary(ed, ed.vertex_index(ep.vertex_id(w)));
  LpaElement c = LpaElement::edge_isometry(ep, loop) + LpaElement::edge_isometry(ep, cross) +
                 (LpaElement::unit(ep) - LpaElement::vertex_projection(ep, w) -
                  LpaElement::vertex_projection(ep, vbar_p));
  if (lift_desc)
    *lift_desc = "c = S_" + ep.edge(loop).id + " + S_" + ep.edge(cross).id +
                 " + (1 - P_" + ep.vertex_id(w) + " - P_" + e.vertex_id(vbar) + ")";
  MilnorData md{&ed, homs.pi2, ku.u, c, c.star()};
  MilnorResult res = milnor_idempotent(md);
  res.base_graph = homs.e_dprime;
  res.lift_graph = homs.e_prime;
  return res;
}

IntMatrix matched_k1_map(const Graph& e_prime, const KGroups& kp, const Graph& e_dprime,
                         const KGroups& kd) {
  using Rat = boost::multiprecision::cpp_rational;
  int r = kd.k1.coord_dim();
  IntMatrix out(r, kp.k1.coord_dim());
  int nd = static_cast<int>(kd.regular_vertices.size());
  for (int j = 0; j < kp.k1.coord_dim(); ++j) {
    const IntVec& src = kp.k1_basis.at(j);
    IntVec x(nd, Int(0));
    for (size_t i = 0; i < kp.regular_vertices.size(); ++i) {
      if (src[i] == 0) continue;
      const std::string& id = e_prime.vertex_id(kp.regular_vertices[i]);
      auto vd = e_dprime.find_vertex(id);
      int pos = -1;
      if (vd)
        for (int t = 0; t < nd; ++t)
          if (kd.regular_vertices[t] == *vd) pos = t;
      if (pos < 0) throw Error("K1 vector of E' is supported outside the E'' kernel");
      x[pos] = src[i];
    }
    IntVec chk = kd.matrix.apply(x);
    IntVec zero(chk.size(), Int(0));
    if (!(chk == zero)) throw Error("matched K1 vector is not in the E'' kernel");
    // coordinates in the kernel basis, by rational solve
    std::vector<std::vector<Rat>> a(nd, std::vector<Rat>(r + 1));
    for (int i = 0; i < nd; ++i) {
      for (int t = 0; t < r; ++t) a[i][t] = Rat(kd.k1_basis[t][i]);
      a[i][r] = Rat(x[i]);
    }
    std::vector<int> pivot(r, -1);
    int row = 0;
    for (int c = 0; c < r && row < nd; ++c) {
      int p = -1;
      for (int i = row; i < nd; ++i)
        if (a[i][c] != 0) { p = i; break; }
      if (p < 0) continue;
      std::swap(a[row], a[p]);
      for (int i = 0; i < nd; ++i) {
        if (i == row || a[i][c] == 0) continue;
        Rat f = a[i][c] / a[row][c];
        for (int t = c; t <= r; ++t) a[i][t] -= f * a[row][t];
      }
      pivot[c] = row++;
    }
    for (int i = row; i < nd; ++i)
      if (a[i][r] != 0) throw Error("K1 solve is inconsistent");
    for (int c = 0; c < r; ++c) {
      if (pivot[c] < 0) continue;
      Rat q = a[pivot[c]][r] / a[pivot[c]][c];
      if (boost::multiprecision::denominator(q) != 1)
        throw Error("K1 vector has non-integer kernel coordinates");
      out.at(c, j) = boost::multiprecision::numerator(q);
    }
  }
  return out;
}

FixedK0Result fixed_k0_auto(const Graph& e, int vbar, int levels,
                            std::string* fix_label_out) {
  TrimCertificate cert = check_trimmable(e, vbar);
  if (!cert.ok()) throw Error("graph is not trimmable at " + e.vertex_id(vbar));
  TrimResult t = trim(e, vbar);
  ColimitGroup col = bratteli_k0_colimit(fixed_point_bratteli(t.e_dprime, levels));
  if (fix_label_out) *fix_label_out = col.label;
  KGroups kp = k_groups(t.e_prime);
  KGroups kd = k_groups(t.e_dprime);
  FixedKInput in;
  in.k1_map = matched_k1_map(t.e_prime, kp, t.e_dprime, kd);
  if (col.kind == ColimitGroup::Kind::Free &&
      col.free_rank == t.e_dprime.num_vertices()) {
    // stationary unimodular tail: the vertex classes stay a basis
    in.fix_dprime = FGAbelianGroup::free(col.free_rank, t.e_dprime.vertex_ids());
  } else if (col.kind == ColimitGroup::Kind::Unrecognized) {
    throw Error("fixed-point K0 of E'' not recognized: " + col.label);
  } else {
    in.fix_dprime_label = col.label;
  }
  AfSequence seq = assemble_fixed_sequence(e, vbar, in);
  return solve_fixed_k0(seq);
}

// --- fixed-point chains --------------------------------------------------

namespace {

// lattice equality of two generating sets inside a group's coordinates
bool same_subgroup(const FGAbelianGroup& g, const std::vector<IntVec>& xs,
                   const std::vector<IntVec>& ys) {
  IntMatrix mx = IntMatrix::from_columns(g.coord_dim(), xs).hstack(g.relations());
  IntMatrix my = IntMatrix::from_columns(g.coord_dim(), ys).hstack(g.relations());
  return column_span_canonical(mx) == column_span_canonical(my);
}

// One trim stage: E is trimmable at vbar, the fixed-point K0 of E'' is the
// known free group fix_d (ambient labels = vertex ids of E''), and the K1
// boundary data comes through the distinguished unitary at unitary_vertex.
ChainStage af_chain_stage(const Graph& e, const std::string& vbar_id,
                          const std::string& unitary_vertex_id,
                          const FGAbelianGroup& fix_d, const IntMatrix& k1_map,
                          FGAbelianGroup* out_group) {
  ChainStage st;
  int vbar = e.vertex_index(vbar_id);
  AfSequence seq = assemble_fixed_sequence(e, vbar, FixedKInput{fix_d, "", k1_map});
  st.result = solve_fixed_k0(seq);

  const Graph& ep = *seq.e_prime;
  const Graph& ed = *seq.e_dprime;

  // Milnor boundary: lift the distinguished unitary of E'' through pi2
  int w = ed.vertex_index(unitary_vertex_id);
  K1Unitary ku = distinguished_k1_unitary(ed, w);
  int wp = ep.vertex_index(unitary_vertex_id);
  int vbar_p = ep.vertex_index(vbar_id);
  int loop = -1, cross = -1;
  for (int edge : ep.out_edges(wp)) {
    if (ep.edge(edge).rng == wp) loop = edge;
    if (ep.edge(edge).rng == vbar_p) cross = edge;
  }
  if (loop < 0 || cross < 0) throw Error("no clutching lift at " + unitary_vertex_id);
  LpaElement c = LpaElement::edge_isometry(ep, loop) + LpaElement::edge_isometry(ep, cross) +
                 (LpaElement::unit(ep) - LpaElement::vertex_projection(ep, wp) -
                  LpaElement::vertex_projection(ep, vbar_p));
  MilnorData md{&ed, seq.homs.pi2, ku.u, c, c.star()};
  st.milnor = milnor_idempotent(md);
  st.milnor.base_graph = seq.e_dprime;
  st.milnor.lift_graph = seq.e_prime;

  LpaElement pbar = LpaElement::vertex_projection(ep, vbar_p);
  st.connecting_rank_one = st.result.connecting_cokernel.same_type(FGAbelianGroup::free(1)) &&
                           st.milnor.passed() && st.milnor.defect == pbar;

  bool rank_ok = st.result.solved && st.result.is_fg && st.result.group.is_free() &&
                 st.result.group.free_rank == e.num_vertices();

  std::vector<IntVec> vertex_cols;
  for (int v = 0; v < e.num_vertices(); ++v)
    vertex_cols.push_back(seq.vertex_images_in_middle->column(v));
  st.generators_span_kernel =
      same_subgroup(seq.middle->group, vertex_cols, st.result.kernel_basis_middle);

  // exactness of the labeled sequence, with X free on the vertex classes
  std::vector<std::string> labels;
  for (const auto& id : e.vertex_ids()) labels.push_back(id);
  FGAbelianGroup x = FGAbelianGroup::free(e.num_vertices(), labels);
  IntMatrix bnd(x.coord_dim(), seq.kd.k1.coord_dim());
  for (int j = 0; j < seq.kd.k1.coord_dim(); ++j) {
    // the boundary of the K1 basis vector, via -del([U]) = [P_vbar]
    const IntVec& kv = seq.kd.k1_basis.at(j);
    Int coeff = kv.at(w);  // sink-free E'': kernel coordinates are vertex-indexed
    bnd.at(vbar, j) = -coeff;
  }
  GroupHom boundary{seq.kd.k1, x, bnd};
  GroupHom a_map{x, seq.middle->group, *seq.vertex_images_in_middle};
  std::string why;
  st.exact = af_exactness(seq, x, boundary, a_map, &why);

  st.ok = rank_ok && st.connecting_rank_one && st.generators_span_kernel && st.exact;
  if (out_group) *out_group = x;
  return st;
}

}  // namespace

ChainReport projective_chain(int n) {
  if (n < 0) throw Error("parameter n must be >= 0");
  ChainReport rep;
  FGAbelianGroup g = FGAbelianGroup::free(1, {"v0"});
  rep.ok = true;
  for (int k = 1; k <= n; ++k) {
    ChainStage st = af_chain_stage(sphere_graph(k), "v" + std::to_string(k),
                                   "v" + std::to_string(k - 1), g, IntMatrix(1, 0), &g);
    st.param = k;
    rep.ok = rep.ok && st.ok;
    rep.stages.push_back(std::move(st));
  }
  rep.k0 = g;
  return rep;
}

namespace {

// One teardrop stage l >= 2 through the Toeplitz pullback: the stage
// pullback has base the circle graph and lift corner Q_l / H.
ChainStage wp_stage(int l, const FGAbelianGroup& g_prev, FGAbelianGroup* out_group) {
  ChainStage st;
  st.param = l;
  Graph ql = ql_graph(l);
  std::vector<std::string> h_ids;
  for (int i = 0; i + 1 < l; ++i) h_ids.push_back("v1_" + std::to_string(i));
  auto qmod_p = std::make_shared<Graph>(ql.quotient(ql.vertex_set(h_ids)));
  const Graph& qmod = *qmod_p;
  std::string last = "v1_" + std::to_string(l - 1);
  auto circ_p = std::make_shared<Graph>(qmod.quotient(qmod.vertex_set({last})));
  const Graph& circ = *circ_p;
  if (!(circ == circle_graph())) throw Error("unexpected circle quotient");

  KGroups ktoe = k_groups(qmod);
  KGroups kcirc = k_groups(circ);
  GenHom sigma = quotient_hom(qmod, circ, qmod.vertex_set({last}));
  GroupHom sigmastar = induced_k0_map(sigma, ktoe, kcirc);

  // left leg on K0: kills every generator except the loop vertex class
  IntMatrix left_amb(kcirc.k0.coord_dim(), g_prev.ambient_dim());
  for (int j = 0; j < g_prev.ambient_dim(); ++j) {
    if (g_prev.ambient_labels.at(j) != "v0_0") continue;
    IntVec cls = class_of_projection(kcirc, circ,
                                     LpaElement::vertex_projection(circ, 0));
    for (int i = 0; i < left_amb.rows(); ++i) left_amb.at(i, j) = cls[i];
  }
  IntMatrix left = left_amb * g_prev.ambient_reps;

  DirectSum middle = direct_sum(g_prev, ktoe.k0);
  IntMatrix bmat(kcirc.k0.coord_dim(), middle.group.coord_dim());
  for (int j = 0; j < g_prev.coord_dim(); ++j)
    for (int i = 0; i < bmat.rows(); ++i) bmat.at(i, middle.a_pos[j]) = left.at(i, j);
  for (int j = 0; j < ktoe.k0.coord_dim(); ++j)
    for (int i = 0; i < bmat.rows(); ++i)
      bmat.at(i, middle.b_pos[j]) = -sigmastar.matrix.at(i, j);
  GroupHom b{middle.group, kcirc.k0, bmat};

  // K1 of both upper corners vanishes, so C = K1(circle) = Z
  st.result.connecting_cokernel = cokernel(IntMatrix(kcirc.k1.coord_dim(), 0));

  IntMatrix gens = IntMatrix::from_columns(middle.group.coord_dim(),
                                           hom_kernel_generators(b));
  IntMatrix canon = column_span_canonical(gens);
  for (int j = 0; j < canon.cols(); ++j)
    st.result.kernel_basis_middle.push_back(canon.column(j));
  st.result.group = FGAbelianGroup::free(st.result.connecting_cokernel.free_rank +
                                         canon.cols());
  st.result.is_fg = true;
  st.result.solved = true;
  st.result.provenance = "K1(circle) + ker(K0(prev) + K0(T) -> K0(circle))";

  // Milnor data: u the loop unitary of the circle, lifted through sigma
  K1Unitary ku = distinguished_k1_unitary(circ, 0);
  LpaElement c = LpaElement::edge_isometry(qmod, *qmod.find_edge("e0_0")) +
                 LpaElement::edge_isometry(qmod, *qmod.find_edge("e01_" + std::to_string(l - 1)));
  MilnorData md{&circ, sigma, ku.u, c, c.star()};
  st.milnor = milnor_idempotent(md);
  st.milnor.base_graph = circ_p;
  st.milnor.lift_graph = qmod_p;
  LpaElement plast = LpaElement::vertex_projection(qmod, qmod.vertex_index(last));
  st.connecting_rank_one = st.result.connecting_cokernel.same_type(FGAbelianGroup::free(1)) &&
                           st.milnor.passed() && st.milnor.defect == plast;

  // generator images of the solved node in the middle
  Graph w_vertices = lens_graph(l);  // same vertex set as the stage's fixed algebra
  IntMatrix vim(middle.group.coord_dim(), w_vertices.num_vertices());
  for (int v = 0; v < w_vertices.num_vertices(); ++v) {
    const std::string& id = w_vertices.vertex_id(v);
    if (id != last) {
      auto it = std::find(g_prev.ambient_labels.begin(), g_prev.ambient_labels.end(), id);
      if (it == g_prev.ambient_labels.end())
        throw Error("previous stage lacks a generator for vertex " + id);
      IntVec cls =
          g_prev.class_of_ambient(static_cast<int>(it - g_prev.ambient_labels.begin()));
      for (int i = 0; i < g_prev.coord_dim(); ++i) vim.at(middle.a_pos[i], v) = cls[i];
    }
    auto idx = qmod.find_vertex(id);
    if (idx) {
      IntVec cls = class_of_projection(ktoe, qmod,
                                       LpaElement::vertex_projection(qmod, *idx));
      for (int i = 0; i < ktoe.k0.coord_dim(); ++i) vim.at(middle.b_pos[i], v) = cls[i];
    }
  }
  std::vector<IntVec> vertex_cols;
  for (int v = 0; v < vim.cols(); ++v) vertex_cols.push_back(vim.column(v));
  st.generators_span_kernel =
      same_subgroup(middle.group, vertex_cols, st.result.kernel_basis_middle);

  // exactness of 0 -> K1(circle) -> X -> middle -> K0(circle) -> 0
  std::vector<std::string> labels;
  for (const auto& id : w_vertices.vertex_ids()) labels.push_back(id);
  FGAbelianGroup x = FGAbelianGroup::free(w_vertices.num_vertices(), labels);
  IntMatrix bnd(x.coord_dim(), kcirc.k1.coord_dim());
  bnd.at(w_vertices.vertex_index(last), 0) = -kcirc.k1_basis.at(0).at(0);
  GroupHom boundary{kcirc.k1, x, bnd};
  GroupHom a_map{x, middle.group, vim};
  st.exact = is_injective(boundary) && exactness_check(boundary, a_map) &&
             exactness_check(a_map, b) && is_surjective(b);

  bool rank_ok = st.result.group.free_rank == w_vertices.num_vertices();
  st.ok = rank_ok && st.connecting_rank_one && st.generators_span_kernel && st.exact;
  if (out_group) *out_group = x;
  return st;
}

}  // namespace

ChainReport teardrop_chain(int l) {
  if (l < 1) throw Error("parameter l must be >= 1");
  ChainReport rep;
  rep.ok = true;
  FGAbelianGroup g = FGAbelianGroup::free(1, {"v0_0"});
  {
    ChainStage st = af_chain_stage(lens_graph(1), "v1_0", "v0_0", g, IntMatrix(1, 0), &g);
    st.param = 1;
    rep.ok = rep.ok && st.ok;
    rep.stages.push_back(std::move(st));
  }
  for (int k = 2; k <= l; ++k) {
    ChainStage st = wp_stage(k, g, &g);
    rep.ok = rep.ok && st.ok;
    rep.stages.push_back(std::move(st));
  }
  rep.k0 = g;
  return rep;
}

// --- the Toeplitz pullback lemma -----------------------------------------

QlpbReport verify_qlpb(int l, int max_len) {
  if (l < 2) throw Error("parameter l must be >= 2");
  QlpbReport r;
  r.l = l;
  r.max_len = max_len;

  Graph ql = ql_graph(l);
  std::string last = "v1_" + std::to_string(l - 1);
  std::vector<std::string> h_ids;
  for (int i = 0; i + 1 < l; ++i) h_ids.push_back("v1_" + std::to_string(i));
  VertexSet h = ql.vertex_set(h_ids);
  VertexSet lastset = ql.vertex_set({last});

  Graph lprev = ql.quotient(lastset);
  Graph qmod = ql.quotient(h);
  Graph circ1 = lprev.quotient(lprev.vertex_set(h_ids));
  Graph circ2 = qmod.quotient(qmod.vertex_set({last}));
  GenHom chi1 = quotient_hom(ql, lprev, lastset);
  GenHom chi2 = quotient_hom(ql, qmod, h);
  GenHom g = quotient_hom(lprev, circ1, lprev.vertex_set(h_ids));
  GenHom sigma = quotient_hom(qmod, circ2, qmod.vertex_set({last}));

  if (!(circ1 == circ2)) {
    r.failures.push_back("the two circle quotients differ");
    return r;
  }

  auto ideal_last = ideal_monomials(ql, lastset, max_len);
  auto ideal_h = ideal_monomials(ql, h, max_len);

  r.products_vanish = true;
  for (const auto& m1 : ideal_last) {
    LpaElement a = LpaElement::monomial(ql, m1.x, m1.y);
    for (const auto& m2 : ideal_h) {
      LpaElement prod = a * LpaElement::monomial(ql, m2.x, m2.y);
      ++r.product_pairs;
      if (!prod.is_zero()) {
        r.products_vanish = false;
        r.failures.push_back("nonzero product " + m1.to_string(ql) + " * " + m2.to_string(ql));
      }
    }
  }

  int last_qmod = qmod.vertex_index(last);
  r.chi2_ideal_ok = true;
  for (const auto& m : ideal_last) {
    LpaElement img = chi2.apply(LpaElement::monomial(ql, m.x, m.y));
    ++r.ideal_monomials_checked;
    for (const auto& [tm, c] : img.terms()) {
      if (tm.x.range(qmod) != last_qmod || tm.y.range(qmod) != last_qmod) {
        r.chi2_ideal_ok = false;
        r.failures.push_back("chi2(" + m.to_string(ql) + ") leaves the base ideal");
      }
    }
  }

  r.square_commutes = true;
  for (const auto& [name, gen] : generators(ql)) {
    if (!(g.apply(chi1.apply(gen)) == sigma.apply(chi2.apply(gen)))) {
      r.square_commutes = false;
      r.failures.push_back("square disagrees on " + name);
    }
  }

  LpaElement s = LpaElement::edge_isometry(qmod, *qmod.find_edge("e0_0")) +
                 LpaElement::edge_isometry(qmod, *qmod.find_edge("e01_" + std::to_string(l - 1)));
  r.toeplitz_isometry = s.is_isometry() && !(s * s.star() == LpaElement::unit(qmod));
  if (!r.toeplitz_isometry) r.failures.push_back("s is not a proper isometry");

  return r;
}

std::string QlpbReport::to_json_text() const {
  nlohmann::json j;
  j["l"] = l;
  j["max_len"] = max_len;
  j["products_vanish"] = products_vanish;
  j["product_pairs"] = product_pairs;
  j["chi2_ideal_ok"] = chi2_ideal_ok;
  j["ideal_monomials_checked"] = ideal_monomials_checked;
  j["square_commutes"] = square_commutes;
  j["toeplitz_isometry"] = toeplitz_isometry;
  j["failures"] = failures;
  j["passed"] = passed();
  return j.dump();
}

}  // namespace trimgraph
