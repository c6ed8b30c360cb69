#ifndef TRIMGRAPH_INTMAT_HPP
#define TRIMGRAPH_INTMAT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "trimgraph/graph.hpp"

namespace trimgraph {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static IntMatrix identity(int n);
  static IntMatrix from_columns(int rows, const std::vector<IntVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntVec apply(const IntVec& x) const;
  IntMatrix hstack(const IntMatrix& o) const;
  IntVec column(int j) const;
  bool is_zero() const;
  bool operator==(const IntMatrix& o) const = default;
  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  IntVec a_;
};

// Entry (v, w) counts the edges with source v and range w, in declaration order.
IntMatrix adjacency_matrix(const Graph& g);

struct SmithNormalForm {
  IntMatrix u, s, v;  // u * m * v == s, u and v unimodular
  int rank = 0;
  IntVec invariant_factors() const;  // nonzero diagonal entries d1 | d2 | ...
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

Int det(const IntMatrix& m);  // square matrices only

// Basis of the integer kernel {x : m x = 0}, as columns.
std::vector<IntVec> kernel_basis(const IntMatrix& m);

// Whether x lies in the column span of m over the integers.
bool in_column_span(const IntMatrix& m, const IntVec& x);

// Inverse of a unimodular square matrix (throws when |det| != 1).
IntMatrix inverse_unimodular(const IntMatrix& u);

// Canonical generating matrix for the column span (column-style Hermite
// form, zero columns dropped). Two subgroups of Z^n are equal iff their
// canonical forms coincide.
IntMatrix column_span_canonical(const IntMatrix& m);

// Rank over Q by fraction-free elimination; independent of the Smith form.
int rational_rank(const IntMatrix& m);
// Gcd of all r x r minors, r = rational rank (0 for the zero matrix). The
// cokernel is free of rank rows - r exactly when this gcd is 1.
Int max_minor_gcd(const IntMatrix& m);

}  // namespace trimgraph

#endif
