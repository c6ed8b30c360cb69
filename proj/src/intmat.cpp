#include "trimgraph/intmat.hpp"

#include <algorithm>
#include <sstream>

namespace trimgraph {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<IntVec>& cols) {
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw Error("column length mismatch");
    for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference shape mismatch");
  IntMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
  return r;
}

IntVec IntMatrix::apply(const IntVec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw Error("matrix apply shape mismatch");
  IntVec y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
  return y;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
  if (rows_ != o.rows_) throw Error("hstack shape mismatch");
  IntMatrix r(rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

IntVec IntMatrix::column(int j) const {
  IntVec c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  for (int i = 0; i < rows_; ++i) {
    out << (i ? "; " : "[");
    for (int j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j);
  }
  out << "]";
  return out.str();
}

IntMatrix adjacency_matrix(const Graph& g) {
  IntMatrix a(g.num_vertices(), g.num_vertices());
  for (const auto& e : g.edges()) a.at(e.src, e.rng) += 1;
  return a;
}

namespace {

Int round_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r < 0) != (b < 0)) ? -1 : 1;
  return q;
}

void swap_rows(IntMatrix& m, int i, int j) {
  for (int k = 0; k < m.cols(); ++k) std::swap(m.at(i, k), m.at(j, k));
}
void swap_cols(IntMatrix& m, int i, int j) {
  for (int k = 0; k < m.rows(); ++k) std::swap(m.at(k, i), m.at(k, j));
}
// row_i -= q * row_j
void row_op(IntMatrix& m, int i, int j, const Int& q) {
  for (int k = 0; k < m.cols(); ++k) m.at(i, k) -= q * m.at(j, k);
}
void col_op(IntMatrix& m, int i, int j, const Int& q) {
  for (int k = 0; k < m.rows(); ++k) m.at(k, i) -= q * m.at(k, j);
}

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m) {
  SmithNormalForm f;
  f.s = m;
  f.u = IntMatrix::identity(m.rows());
  f.v = IntMatrix::identity(m.cols());
  IntMatrix& s = f.s;
  IntMatrix& u = f.u;
  IntMatrix& v = f.v;
  int n = std::min(m.rows(), m.cols());

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // smallest-magnitude nonzero pivot in the trailing submatrix
      int pi = -1, pj = -1;
      for (int i = t; i < s.rows(); ++i)
        for (int j = t; j < s.cols(); ++j)
          if (s.at(i, j) != 0 &&
              (pi < 0 || abs(s.at(i, j)) < abs(s.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) goto done;
      if (pi != t) { swap_rows(s, t, pi); swap_rows(u, t, pi); }
      if (pj != t) { swap_cols(s, t, pj); swap_cols(v, t, pj); }

      bool clean = true;
      for (int i = t + 1; i < s.rows(); ++i)
        if (s.at(i, t) != 0) {
          Int q = round_div(s.at(i, t), s.at(t, t));
          row_op(s, i, t, q);
          row_op(u, i, t, q);
          if (s.at(i, t) != 0) clean = false;
        }
      for (int j = t + 1; j < s.cols(); ++j)
        if (s.at(t, j) != 0) {
          Int q = round_div(s.at(t, j), s.at(t, t));
          col_op(s, j, t, q);
          col_op(v, j, t, q);
          if (s.at(t, j) != 0) clean = false;
        }
      if (!clean) continue;

      // pivot must divide the whole trailing block
      bool divides = true;
      for (int i = t + 1; i < s.rows() && divides; ++i)
        for (int j = t + 1; j < s.cols() && divides; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            row_op(s, t, i, Int(-1));
            row_op(u, t, i, Int(-1));
            divides = false;
          }
      if (divides) break;
    }
    if (s.at(t, t) < 0) {
      for (int k = 0; k < s.cols(); ++k) s.at(t, k) = -s.at(t, k);
      for (int k = 0; k < u.cols(); ++k) u.at(t, k) = -u.at(t, k);
    }
  }
done:
  for (int t = 0; t < n; ++t)
    if (s.at(t, t) != 0) ++f.rank;
  return f;
}

IntVec SmithNormalForm::invariant_factors() const {
  IntVec d;
  for (int t = 0; t < rank; ++t) d.push_back(s.at(t, t));
  return d;
}

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("det: matrix not square");
  int n = m.rows();
  if (n == 0) return 1;
  // fraction-free Bareiss elimination
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::vector<IntVec> kernel_basis(const IntMatrix& m) {
  SmithNormalForm f = smith_normal_form(m);
  std::vector<IntVec> basis;
  for (int j = f.rank; j < m.cols(); ++j) basis.push_back(f.v.column(j));
  return basis;
}

bool in_column_span(const IntMatrix& m, const IntVec& x) {
  SmithNormalForm f = smith_normal_form(m);
  IntVec y = f.u.apply(x);
  for (int i = 0; i < m.rows(); ++i) {
    if (i < f.rank) {
      if (y[i] % f.s.at(i, i) != 0) return false;
    } else if (y[i] != 0) {
      return false;
    }
  }
  return true;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw Error("inverse: matrix not square");
  int n = u.rows();
  using Rat = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rat(u.at(i, j));
    a[i][n + i] = 1;
  }
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (a[i][k] != 0) { p = i; break; }
    if (p < 0) throw Error("inverse: matrix is singular");
    std::swap(a[k], a[p]);
    Rat piv = a[k][k];
    for (int j = k; j < 2 * n; ++j) a[k][j] /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rat f = a[i][k];
      for (int j = k; j < 2 * n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  IntMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& x = a[i][n + j];
      if (denominator(x) != 1) throw Error("inverse: matrix is not unimodular");
      inv.at(i, j) = numerator(x);
    }
  return inv;
}

IntMatrix column_span_canonical(const IntMatrix& m) {
  IntMatrix a = m;
  int c = 0;
  for (int r = 0; r < a.rows() && c < a.cols(); ++r) {
    int p = -1;
    for (int j = c; j < a.cols(); ++j)
      if (a.at(r, j) != 0) { p = j; break; }
    if (p < 0) continue;
    if (p != c) swap_cols(a, c, p);
    // gcd-combine the remaining columns into column c at row r
    for (int j = c + 1; j < a.cols(); ++j) {
      while (a.at(r, j) != 0) {
        Int q = a.at(r, c) / a.at(r, j);
        col_op(a, c, j, q);
        swap_cols(a, c, j);
      }
    }
    if (a.at(r, c) < 0)
      for (int k = 0; k < a.rows(); ++k) a.at(k, c) = -a.at(k, c);
    for (int j = 0; j < c; ++j) {
      Int q = a.at(r, j) / a.at(r, c);
      if (a.at(r, j) - q * a.at(r, c) < 0) q -= 1;
      if (q != 0) col_op(a, j, c, q);
    }
    ++c;
  }
  // keep the c pivot columns only
  IntMatrix out(a.rows(), c);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < c; ++j) out.at(i, j) = a.at(i, j);
  return out;
}

int rational_rank(const IntMatrix& m) {
  using Rat = boost::multiprecision::cpp_rational;
  std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = Rat(m.at(i, j));
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int p = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(a[rank], a[p]);
    for (int i = rank + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[rank][c];
      for (int j = c; j < m.cols(); ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

void minor_gcd_rec(const IntMatrix& m, int r, std::vector<int>& rows,
                   std::vector<int>& cols, int next, bool picking_rows, Int& g) {
  if (picking_rows) {
    if (static_cast<int>(rows.size()) == r) {
      cols.clear();
      minor_gcd_rec(m, r, rows, cols, 0, false, g);
      return;
    }
    for (int i = next; i < m.rows(); ++i) {
      rows.push_back(i);
      minor_gcd_rec(m, r, rows, cols, i + 1, true, g);
      rows.pop_back();
      if (g == 1) return;
    }
    return;
  }
  if (static_cast<int>(cols.size()) == r) {
    IntMatrix sub(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub.at(i, j) = m.at(rows[i], cols[j]);
    Int d = det(sub);
    if (d < 0) d = -d;
    g = boost::multiprecision::gcd(g, d);
    return;
  }
  for (int j = next; j < m.cols(); ++j) {
    cols.push_back(j);
    minor_gcd_rec(m, r, rows, cols, j + 1, false, g);
    cols.pop_back();
    if (g == 1) return;
  }
}

}  // namespace

Int max_minor_gcd(const IntMatrix& m) {
  int r = rational_rank(m);
  if (r == 0) return 0;
  Int g = 0;
  std::vector<int> rows, cols;
  minor_gcd_rec(m, r, rows, cols, 0, true, g);
  return g;
}

}  // namespace trimgraph
