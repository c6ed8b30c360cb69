#include "trimgraph/ktheory.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "json.hpp"

namespace trimgraph {

namespace {

nlohmann::json group_json(const FGAbelianGroup& g) {
  nlohmann::json j;
  j["rank"] = static_cast<long long>(g.free_rank);
  j["torsion"] = nlohmann::json::array();
  for (const auto& d : g.torsion) j["torsion"].push_back(d.str());
  if (!g.ambient_labels.empty()) {
    nlohmann::json gens = nlohmann::json::object();
    for (int i = 0; i < g.ambient_dim(); ++i) {
      nlohmann::json vec = nlohmann::json::array();
      for (const auto& x : g.class_of_ambient(i)) vec.push_back(x.str());
      gens[g.ambient_labels[i]] = vec;
    }
    j["generators"] = gens;
  }
  j["name"] = g.to_string();
  return j;
}

}  // namespace

std::string KGroups::to_json_text() const {
  nlohmann::json j;
  j["k0"] = group_json(k0);
  j["k1"] = group_json(k1);
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& v : k1_basis) {
    nlohmann::json vec = nlohmann::json::array();
    for (const auto& x : v) vec.push_back(x.str());
    basis.push_back(vec);
  }
  j["k1"]["kernel_basis"] = basis;
  return j.dump();
}

KGroups k_groups(const Graph& g) {
  KGroups k;
  int n = g.num_vertices();
  for (int v = 0; v < n; ++v)
    if (!g.is_sink(v)) k.regular_vertices.push_back(v);
  IntMatrix a = adjacency_matrix(g);
  k.matrix = IntMatrix(n, static_cast<int>(k.regular_vertices.size()));
  for (int j = 0; j < k.matrix.cols(); ++j) {
    int w = k.regular_vertices[j];
    for (int i = 0; i < n; ++i)
      k.matrix.at(i, j) = (i == w ? 1 : 0) - a.at(w, i);
  }
  std::vector<std::string> labels;
  for (int v = 0; v < n; ++v) labels.push_back("[P_" + g.vertex_id(v) + "]");
  k.k0 = cokernel(k.matrix, labels);
  k.k1_basis = kernel_basis(k.matrix);
  std::vector<std::string> k1_labels;
  for (int v : k.regular_vertices) k1_labels.push_back("e_" + g.vertex_id(v));
  auto kg = kernel(k.matrix);
  k.k1 = std::move(kg.group);
  return k;
}

IntVec projection_vertex_vector(const Graph& g, const LpaElement& p) {
  if (!p.is_projection()) throw Error("element is not a projection");
  IntVec vec(g.num_vertices());
  for (const auto& [m, c] : p.terms()) {
    if (!m.is_diagonal())
      throw Error("unsupported projection shape: non-diagonal monomial " + m.to_string(g));
    const auto& coeffs = c.coeffs();
    if (coeffs.size() != 1 || coeffs.count(0) == 0 || coeffs.at(0) != 1)
      throw Error("unsupported projection shape: coefficient " + c.to_string() + " on " +
                  m.to_string(g));
    vec[m.x.range(g)] += 1;
  }
  return vec;
}

IntVec class_of_projection(const KGroups& k, const Graph& g, const LpaElement& p) {
  return k.k0.class_of_ambient_vector(projection_vertex_vector(g, p));
}

IntVec class_of_unit(const KGroups& k, const Graph& g) {
  IntVec ones(g.num_vertices(), 1);
  return k.k0.class_of_ambient_vector(ones);
}

K1Unitary distinguished_k1_unitary(const Graph& g, int vbar) {
  if (!g.sinks().empty()) {
    std::string s;
    for (int v : g.sinks()) s += (s.empty() ? "" : ", ") + g.vertex_id(v);
    throw Error("graph has sinks (" + s + "); the distinguished unitary needs a sink-free graph");
  }
  const auto& out = g.out_edges(vbar);
  if (out.size() != 1 || g.edge(out[0]).rng != vbar)
    throw Error("vertex " + g.vertex_id(vbar) + " does not carry a unique loop");
  K1Unitary r;
  r.ebar = out[0];
  LpaElement s = LpaElement::edge_isometry(g, r.ebar);
  r.u = s + (LpaElement::unit(g) - s * s.star());
  r.unitary = r.u.is_unitary();

  KGroups k = k_groups(g);  // sink-free: all vertices regular
  r.vector = IntVec(g.num_vertices());
  r.vector[vbar] = 1;
  IntVec img = k.matrix.apply(r.vector);
  r.in_kernel = std::all_of(img.begin(), img.end(), [](const Int& x) { return x == 0; });
  return r;
}

std::string BratteliBlock::label(const Graph& g) const {
  std::string s = g.vertex_id(vertex);
  if (sink_level >= 0) s += "@" + std::to_string(sink_level);
  return s;
}

BratteliDiagram fixed_point_bratteli(const Graph& g, int levels) {
  BratteliDiagram b;
  b.g = &g;
  int n = g.num_vertices();
  IntMatrix a = adjacency_matrix(g);

  // counts[k][v] = number of length-k paths with range v
  std::vector<IntVec> counts;
  counts.emplace_back(n, 1);
  for (int k = 0; k < levels; ++k) {
    IntVec next(n);
    for (int v = 0; v < n; ++v)
      for (int e : g.out_edges(v))
        next[g.edge(e).rng] += counts[k][v];
    counts.push_back(std::move(next));
  }

  for (int lvl = 0; lvl <= levels; ++lvl) {
    std::vector<BratteliBlock> blocks;
    for (int v = 0; v < n; ++v) {
      if (!g.is_sink(v)) {
        if (counts[lvl][v] > 0) blocks.push_back({v, -1, counts[lvl][v]});
      } else {
        for (int k = 0; k <= lvl; ++k)
          if (counts[k][v] > 0) blocks.push_back({v, k, counts[k][v]});
      }
    }
    b.levels.push_back(std::move(blocks));
  }

  for (int lvl = 0; lvl < levels; ++lvl) {
    const auto& from = b.levels[lvl];
    const auto& to = b.levels[lvl + 1];
    IntMatrix m(static_cast<int>(to.size()), static_cast<int>(from.size()));
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        const auto& tb = to[i];
        const auto& fb = from[j];
        if (tb.sink_level >= 0 && tb.sink_level <= lvl) {
          // frozen sink block persists
          if (fb.vertex == tb.vertex && fb.sink_level == tb.sink_level) m.at(i, j) = 1;
        } else if (fb.sink_level < 0) {
          // edges from a regular block into a regular or newly frozen block
          m.at(i, j) = a.at(fb.vertex, tb.vertex);
        }
      }
    }
    b.maps.push_back(std::move(m));
  }
  return b;
}

namespace {

bool left_invertible(const IntMatrix& m) {
  SmithNormalForm f = smith_normal_form(m);
  if (f.rank != m.cols()) return false;
  for (const auto& d : f.invariant_factors())
    if (d != 1) return false;
  return true;
}

std::string scalar_label(const Int& m) {
  return m == 1 ? "Z" : "Z[1/" + m.str() + "]";
}

}  // namespace

ColimitGroup bratteli_k0_colimit(const BratteliDiagram& b) {
  ColimitGroup c;
  for (const auto& lvl : b.levels) c.ranks.push_back(static_cast<int>(lvl.size()));
  c.maps = b.maps;

  if (c.ranks.empty()) {
    c.kind = ColimitGroup::Kind::Free;
    c.label = "0";
    return c;
  }

  // eventually square unimodular maps: colimit is the last free group
  {
    size_t s = 0;  // trailing run of square unimodular maps
    for (size_t i = c.maps.size(); i-- > 0;) {
      const IntMatrix& m = c.maps[i];
      if (m.rows() != m.cols() || abs(det(m)) != 1) break;
      ++s;
    }
    if (s == c.maps.size() || s >= 3) {
      c.kind = ColimitGroup::Kind::Free;
      c.free_rank = c.ranks.back();
      c.label = c.free_rank == 0 ? "0" : (c.free_rank == 1 ? "Z" : "Z^" + std::to_string(c.free_rank));
      return c;
    }
  }

  // every map split-injective over Z with strictly growing ranks
  if (c.ranks.size() >= 2) {
    bool ok = true;
    for (size_t i = 0; i + 1 < c.ranks.size(); ++i)
      if (c.ranks[i + 1] <= c.ranks[i]) { ok = false; break; }
    for (const auto& m : c.maps)
      if (ok && !left_invertible(m)) ok = false;
    if (ok) {
      c.kind = ColimitGroup::Kind::FreeCountable;
      c.label = "FreeCountable";
      return c;
    }
  }

  // stationary with a unimodular integer eigenbasis, eigenvalues >= 1
  if (!c.maps.empty()) {
    size_t t = c.maps.size();
    while (t > 0 && c.maps[t - 1] == c.maps.back()) --t;
    const IntMatrix& bmat = c.maps.back();
    if (t + 2 < c.maps.size() && bmat.rows() == bmat.cols()) {
      int r = bmat.rows();
      Int bound = 0;
      for (int i = 0; i < r; ++i) {
        Int row_sum = 0;
        for (int j = 0; j < r; ++j) row_sum += abs(bmat.at(i, j));
        if (row_sum > bound) bound = row_sum;
      }
      IntVec scalars;
      std::vector<IntVec> vecs;
      for (Int m = 1; m <= bound; ++m) {
        IntMatrix shifted = bmat - IntMatrix::identity(r);
        for (int i = 0; i < r; ++i) shifted.at(i, i) = bmat.at(i, i) - m;
        if (det(shifted) != 0) continue;
        for (auto& v : kernel_basis(shifted)) {
          scalars.push_back(m);
          vecs.push_back(std::move(v));
        }
      }
      if (static_cast<int>(vecs.size()) == r) {
        IntMatrix w = IntMatrix::from_columns(r, vecs);
        if (abs(det(w)) == 1) {
          c.kind = ColimitGroup::Kind::InvertedScalars;
          c.stationary = true;
          c.stationary_map = bmat;
          c.scalars = scalars;
          c.eigenvectors = vecs;
          for (size_t i = 0; i < scalars.size(); ++i)
            c.label += (i ? " + " : "") + scalar_label(scalars[i]);
          return c;
        }
      }
    }
  }

  c.kind = ColimitGroup::Kind::Unrecognized;
  c.label = "Unrecognized";
  return c;
}

bool colimit_label_oracle(const ColimitGroup& c, int max_k) {
  if (c.kind != ColimitGroup::Kind::InvertedScalars || !c.stationary) return false;
  using Rat = boost::multiprecision::cpp_rational;
  const IntMatrix& b = c.stationary_map;
  int r = b.rows();
  IntMatrix w = IntMatrix::from_columns(r, c.eigenvectors);
  IntMatrix winv = inverse_unimodular(w);

  // x in U_n B^{-n} Z^r iff some power of B clears the denominators
  auto in_union = [&](const std::vector<Rat>& x0) {
    std::vector<Rat> x = x0;
    int max_n = 4 * max_k + 8;
    for (int n = 0; n <= max_n; ++n) {
      bool integral = true;
      for (const auto& xi : x)
        if (denominator(xi) != 1) { integral = false; break; }
      if (integral) return true;
      std::vector<Rat> y(r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) y[i] += Rat(b.at(i, j)) * x[j];
      x = std::move(y);
    }
    return false;
  };
  // x in {sum q_i w_i : q_i in Z[1/m_i]}
  auto in_claim = [&](const std::vector<Rat>& x) {
    for (int i = 0; i < r; ++i) {
      Rat q;
      for (int j = 0; j < r; ++j) q += Rat(winv.at(i, j)) * x[j];
      Int d = denominator(q);
      for (;;) {
        Int g = gcd(d, c.scalars[i]);
        if (g == 1) break;
        while (d % g == 0) d /= g;
      }
      if (d != 1) return false;
    }
    return true;
  };

  std::vector<Int> denoms;
  for (const auto& m : c.scalars)
    if (m > 1) denoms.push_back(m);
  denoms.push_back(2);
  denoms.push_back(3);
  for (const auto& m : denoms) {
    for (int k = 0; k <= max_k; ++k) {
      Int q = 1;
      for (int i = 0; i < k; ++i) q *= m;
      for (int j = 0; j < r; ++j) {
        for (long long p : {1, 2, 3, 5}) {
          std::vector<Rat> x(r);
          x[j] = Rat(Int(p), q);
          if (in_union(x) != in_claim(x)) return false;
        }
      }
    }
  }
  return true;
}

GroupHom induced_k0_map(const GenHom& h, const KGroups& src, const KGroups& tgt) {
  const Graph& sg = *h.source;
  const Graph& tg = *h.target;
  IntMatrix on_ambient(tgt.k0.coord_dim(), sg.num_vertices());
  for (int v = 0; v < sg.num_vertices(); ++v) {
    const LpaElement& img = h.vertex_images[v];
    IntVec cls(tgt.k0.coord_dim());
    if (!img.is_zero()) cls = class_of_projection(tgt, tg, img);
    for (int i = 0; i < on_ambient.rows(); ++i) on_ambient.at(i, v) = cls[i];
  }
  // the map must kill the source presentation (CK2 relations in K0)
  for (int j = 0; j < src.matrix.cols(); ++j) {
    IntVec rel = tgt.k0.reduce(on_ambient.apply(src.matrix.column(j)));
    for (const auto& x : rel)
      if (x != 0)
        throw Error("vertex images do not respect the K0 presentation");
  }
  return GroupHom{src.k0, tgt.k0, on_ambient * src.k0.ambient_reps};
}

std::string ColimitGroup::to_json_text() const {
  nlohmann::json j;
  j["label"] = label;
  j["ranks"] = ranks;
  j["stationary"] = stationary;
  if (stationary) j["stationary_map"] = stationary_map.to_string();
  return j.dump();
}

}  // namespace trimgraph
