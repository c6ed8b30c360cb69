#include "trimgraph/abelian.hpp"

#include <sstream>

namespace trimgraph {

FGAbelianGroup FGAbelianGroup::free(long long rank, std::vector<std::string> labels) {
  FGAbelianGroup g;
  g.free_rank = rank;
  g.ambient_labels = std::move(labels);
  g.ambient_to_coords = IntMatrix::identity(static_cast<int>(rank));
  g.ambient_reps = g.ambient_to_coords;
  return g;
}

IntVec FGAbelianGroup::reduce(IntVec coords) const {
  if (static_cast<int>(coords.size()) != coord_dim()) throw Error("coordinate dimension mismatch");
  for (int i = 0; i < torsion_count(); ++i) {
    coords[i] %= torsion[i];
    if (coords[i] < 0) coords[i] += torsion[i];
  }
  return coords;
}

IntVec FGAbelianGroup::class_of_ambient(int i) const {
  IntVec x(ambient_dim());
  x[i] = 1;
  return class_of_ambient_vector(x);
}

IntVec FGAbelianGroup::class_of_ambient_vector(const IntVec& x) const {
  return reduce(ambient_to_coords.apply(x));
}

IntMatrix FGAbelianGroup::relations() const {
  IntMatrix r(coord_dim(), torsion_count());
  for (int i = 0; i < torsion_count(); ++i) r.at(i, i) = torsion[i];
  return r;
}

std::string FGAbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& d : torsion) {
    out << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank > 0) {
    out << (first ? "" : " + ") << "Z";
    if (free_rank > 1) out << "^" << free_rank;
  }
  return out.str();
}

FGAbelianGroup cokernel(const IntMatrix& m, std::vector<std::string> labels) {
  SmithNormalForm f = smith_normal_form(m);
  FGAbelianGroup g;
  g.ambient_labels = std::move(labels);
  std::vector<int> torsion_rows, free_rows;
  for (int i = 0; i < f.rank; ++i)
    if (f.s.at(i, i) >= 2) {
      torsion_rows.push_back(i);
      g.torsion.push_back(f.s.at(i, i));
    }
  for (int i = f.rank; i < m.rows(); ++i) free_rows.push_back(i);
  g.free_rank = static_cast<long long>(free_rows.size());
  g.ambient_to_coords = IntMatrix(g.coord_dim(), m.rows());
  int r = 0;
  for (int i : torsion_rows) {
    for (int j = 0; j < m.rows(); ++j) g.ambient_to_coords.at(r, j) = f.u.at(i, j);
    ++r;
  }
  for (int i : free_rows) {
    for (int j = 0; j < m.rows(); ++j) g.ambient_to_coords.at(r, j) = f.u.at(i, j);
    ++r;
  }
  IntMatrix uinv = inverse_unimodular(f.u);
  g.ambient_reps = IntMatrix(m.rows(), g.coord_dim());
  r = 0;
  for (int i : torsion_rows) {
    for (int j = 0; j < m.rows(); ++j) g.ambient_reps.at(j, r) = uinv.at(j, i);
    ++r;
  }
  for (int i : free_rows) {
    for (int j = 0; j < m.rows(); ++j) g.ambient_reps.at(j, r) = uinv.at(j, i);
    ++r;
  }
  return g;
}

KernelGroup kernel(const IntMatrix& m) {
  KernelGroup k;
  k.basis = kernel_basis(m);
  k.group = FGAbelianGroup::free(static_cast<long long>(k.basis.size()));
  return k;
}

bool GroupHom::well_defined() const {
  if (matrix.rows() != target.coord_dim() || matrix.cols() != source.coord_dim()) return false;
  IntMatrix rel = target.relations();
  for (int i = 0; i < source.torsion_count(); ++i) {
    IntVec x(source.coord_dim());
    x[i] = source.torsion[i];
    if (!in_column_span(rel, matrix.apply(x))) return false;
  }
  return true;
}

GroupHom GroupHom::zero(const FGAbelianGroup& src, const FGAbelianGroup& tgt) {
  return GroupHom{src, tgt, IntMatrix(tgt.coord_dim(), src.coord_dim())};
}

GroupHom GroupHom::identity(const FGAbelianGroup& g) {
  return GroupHom{g, g, IntMatrix::identity(g.coord_dim())};
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!f.target.same_type(g.source)) throw Error("compose: type mismatch at the middle group");
  return GroupHom{f.source, g.target, g.matrix * f.matrix};
}

std::vector<IntVec> hom_kernel_generators(const GroupHom& g) {
  // x in ker iff matrix*x lies in the target relation lattice: take the
  // integer kernel of [matrix | relations] and keep the x-part.
  IntMatrix stacked = g.matrix.hstack(g.target.relations());
  std::vector<IntVec> gens;
  for (const auto& v : kernel_basis(stacked)) {
    IntVec x(v.begin(), v.begin() + g.source.coord_dim());
    gens.push_back(std::move(x));
  }
  // the source relations are always in the kernel
  for (int i = 0; i < g.source.torsion_count(); ++i) {
    IntVec x(g.source.coord_dim());
    x[i] = g.source.torsion[i];
    gens.push_back(std::move(x));
  }
  return gens;
}

namespace {
IntMatrix subgroup_canonical(const FGAbelianGroup& g, const std::vector<IntVec>& gens) {
  IntMatrix m = IntMatrix::from_columns(g.coord_dim(), gens).hstack(g.relations());
  return column_span_canonical(m);
}
}  // namespace

bool exactness_check(const GroupHom& f, const GroupHom& g) {
  if (!f.target.same_type(g.source)) throw Error("exactness_check: maps are not composable");
  std::vector<IntVec> image;
  for (int j = 0; j < f.source.coord_dim(); ++j) image.push_back(f.matrix.column(j));
  return subgroup_canonical(g.source, image) ==
         subgroup_canonical(g.source, hom_kernel_generators(g));
}

bool is_surjective(const GroupHom& f) {
  std::vector<IntVec> image;
  for (int j = 0; j < f.source.coord_dim(); ++j) image.push_back(f.matrix.column(j));
  return vectors_generate(f.target, image);
}

bool is_injective(const GroupHom& f) {
  for (const auto& x : hom_kernel_generators(f))
    if (f.source.reduce(x) != IntVec(f.source.coord_dim())) return false;
  return true;
}

FGAbelianGroup solve_split_extension(const FGAbelianGroup& sub, const FGAbelianGroup& quot) {
  if (!quot.is_free())
    throw Error("split extension: quotient has torsion, extension not determined");
  FGAbelianGroup g;
  g.torsion = sub.torsion;
  g.free_rank = sub.free_rank + quot.free_rank;
  g.ambient_to_coords = IntMatrix::identity(g.coord_dim());
  g.ambient_reps = g.ambient_to_coords;
  return g;
}

bool vectors_generate(const FGAbelianGroup& g, const std::vector<IntVec>& gens) {
  IntMatrix span = IntMatrix::from_columns(g.coord_dim(), gens).hstack(g.relations());
  for (int i = 0; i < g.coord_dim(); ++i) {
    IntVec e(g.coord_dim());
    e[i] = 1;
    if (!in_column_span(span, e)) return false;
  }
  return true;
}

}  // namespace trimgraph
