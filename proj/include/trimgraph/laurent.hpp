#ifndef TRIMGRAPH_LAURENT_HPP
#define TRIMGRAPH_LAURENT_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace trimgraph {

// Integer Laurent polynomial in one variable u.
class Laurent {
 public:
  Laurent() = default;
  Laurent(std::int64_t c) { if (c) c_[0] = c; }
  static Laurent term(std::int64_t c, int exp) {
    Laurent p;
    if (c) p.c_[exp] = c;
    return p;
  }
  static Laurent u_pow(int exp) { return term(1, exp); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_.count(0) && c_.at(0) == 1; }
  // Nonzero only on a single power of u?
  bool is_monomial() const { return c_.size() == 1; }
  const std::map<int, std::int64_t>& coeffs() const { return c_; }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.c_) {
      auto it = c_.find(e);
      if (it == c_.end()) {
        c_[e] = c;
      } else if ((it->second += c) == 0) {
        c_.erase(it);
      }
    }
    return *this;
  }
  Laurent operator+(const Laurent& o) const { Laurent r = *this; r += o; return r; }
  Laurent operator-() const {
    Laurent r;
    for (const auto& [e, c] : c_) r.c_[e] = -c;
    return r;
  }
  Laurent operator-(const Laurent& o) const { return *this + (-o); }
  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [e1, c1] : c_)
      for (const auto& [e2, c2] : o.c_) r += term(c1 * c2, e1 + e2);
    return r;
  }
  // Formal involution u -> u^-1 (integer coefficients are self-conjugate).
  Laurent conj() const {
    Laurent r;
    for (const auto& [e, c] : c_) r.c_[-e] = c;
    return r;
  }
  // Substitution u -> u^k.
  Laurent substitute_u_pow(int k) const {
    Laurent r;
    for (const auto& [e, c] : c_) r += term(c, e * k);
    return r;
  }
  bool operator==(const Laurent& o) const = default;

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : c_) {
      if (!first) out << (c >= 0 ? " + " : " - ");
      else if (c < 0) out << "-";
      std::int64_t a = c >= 0 ? c : -c;
      if (a != 1 || e == 0) out << a;
      if (e != 0) {
        if (a != 1) out << "*";
        out << "u";
        if (e != 1) out << "^" << e;
      }
      first = false;
    }
    return out.str();
  }

 private:
  std::map<int, std::int64_t> c_;  // exponent -> coefficient, no zeros
};

}  // namespace trimgraph

#endif
