#ifndef TRIMGRAPH_ABELIAN_HPP
#define TRIMGRAPH_ABELIAN_HPP

#include <string>
#include <vector>

#include "trimgraph/intmat.hpp"

namespace trimgraph {

// Finitely generated abelian group in invariant-factor form:
// Z/d1 + ... + Z/dt + Z^free_rank with d1 | d2 | ... , each di >= 2.
//
// Groups produced as cokernels keep the map from the ambient Z^n onto the
// normal coordinates, so that classes of ambient basis vectors (e.g. vertex
// projections) stay computable. Normal coordinates list torsion entries
// first, then free entries.
struct FGAbelianGroup {
  long long free_rank = 0;
  IntVec torsion;
  std::vector<std::string> ambient_labels;  // one per ambient generator, may be empty
  IntMatrix ambient_to_coords;              // (t + free_rank) x n; identity when trivial
  IntMatrix ambient_reps;                   // n x (t + free_rank): representative of
                                            // each normal coordinate in the ambient group

  static FGAbelianGroup free(long long rank, std::vector<std::string> labels = {});
  static FGAbelianGroup zero() { return free(0); }

  int torsion_count() const { return static_cast<int>(torsion.size()); }
  int coord_dim() const { return torsion_count() + static_cast<int>(free_rank); }
  int ambient_dim() const { return ambient_to_coords.cols(); }
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  bool same_type(const FGAbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }

  IntVec reduce(IntVec coords) const;  // reduce torsion entries mod di
  IntVec class_of_ambient(int i) const;
  IntVec class_of_ambient_vector(const IntVec& x) const;
  // Relation matrix in normal coordinates (diagonal torsion columns).
  IntMatrix relations() const;
  std::string to_string() const;
};

// Cokernel Z^rows / colspan(m), with the class map for ambient vectors.
FGAbelianGroup cokernel(const IntMatrix& m, std::vector<std::string> labels = {});
// Kernel of m as a free group together with an explicit basis in Z^cols.
struct KernelGroup {
  FGAbelianGroup group;
  std::vector<IntVec> basis;
};
KernelGroup kernel(const IntMatrix& m);

// Homomorphism given by its matrix on normal coordinates.
struct GroupHom {
  FGAbelianGroup source, target;
  IntMatrix matrix;  // target.coord_dim() x source.coord_dim()

  bool well_defined() const;  // matrix kills the torsion relations
  IntVec apply(const IntVec& x) const { return target.reduce(matrix.apply(x)); }
  static GroupHom zero(const FGAbelianGroup& src, const FGAbelianGroup& tgt);
  static GroupHom identity(const FGAbelianGroup& g);
};

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f

// Generators of ker g as vectors in source coordinates.
std::vector<IntVec> hom_kernel_generators(const GroupHom& g);
// Image of f equals kernel of g inside target(f) = source(g).
bool exactness_check(const GroupHom& f, const GroupHom& g);
bool is_surjective(const GroupHom& f);
bool is_injective(const GroupHom& f);

// Direct sum of sub and quot; refuses when quot has torsion, since the
// extension would not be determined.
FGAbelianGroup solve_split_extension(const FGAbelianGroup& sub, const FGAbelianGroup& quot);

// Subgroup span helper: do the given coordinate vectors generate the group?
bool vectors_generate(const FGAbelianGroup& g, const std::vector<IntVec>& gens);

}  // namespace trimgraph

#endif
