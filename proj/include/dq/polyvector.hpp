#pragma once

#include <map>
#include <string>
#include <vector>

#include "dq/polynomial.hpp"

namespace dq {

// Sorts idx ascending, returns the permutation sign; sign = 0 if an index
// repeats.
int sort_with_sign(std::vector<int>& idx);

// Polyvector field of fixed degree k on Q^d with polynomial coefficients:
//   gamma = sum_{i1<...<ik} gamma^{i1..ik} d_{i1} ^ ... ^ d_{ik}.
// Components are stored on strictly increasing index tuples (1-based).
// Degree 0 is a plain polynomial. Default-constructed value (dim 0,
// degree 0, no terms) is a universal zero, as for Polynomial.
class PolyVector {
 public:
  PolyVector() = default;
  PolyVector(int dim, int degree) : dim_(dim), degree_(degree) {}

  static PolyVector function(Polynomial f);
  // c * d_{i1} ^ ... ^ d_{ik}; indices in any order, repeats give zero.
  static PolyVector term(int dim, std::vector<int> idx, Polynomial c);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return comps_.empty(); }
  const std::map<std::vector<int>, Polynomial>& comps() const { return comps_; }

  // Component on a sorted tuple; zero polynomial if absent.
  Polynomial comp(const std::vector<int>& sorted_idx) const;
  // Fully antisymmetric tensor component on an arbitrary tuple.
  Polynomial tensor(const std::vector<int>& idx) const;

  void add_term(std::vector<int> idx, Polynomial c);

  PolyVector& operator+=(const PolyVector& o);
  PolyVector& operator-=(const PolyVector& o);
  PolyVector operator-() const;
  PolyVector& operator*=(const Rat& c);

  bool operator==(const PolyVector& o) const;
  bool operator!=(const PolyVector& o) const { return !(*this == o); }

 private:
  int dim_ = 0;
  int degree_ = 0;
  std::map<std::vector<int>, Polynomial> comps_;
  void adopt(const PolyVector& o);
};

PolyVector operator+(PolyVector a, const PolyVector& b);
PolyVector operator-(PolyVector a, const PolyVector& b);
PolyVector operator*(const Rat& c, PolyVector v);

// Exterior product.
PolyVector wedge(const PolyVector& a, const PolyVector& b);

// Contraction with d_i in the first slot (degree drops by one; zero on
// degree 0).
PolyVector insert_first(int i, const PolyVector& a);

// a . b = sum_i (iota_{d_i} a) ^ (d/dx_i applied to b's coefficients).
// Zero when deg a = 0.
PolyVector bullet(const PolyVector& a, const PolyVector& b);

// Schouten bracket,
//   [a,b] = (-1)^{ka-1} ( a.b + (-1)^{ka kb} b.a ).
// Reduces to the Lie bracket on vector fields and to [v,f] = v(f).
PolyVector schouten(const PolyVector& a, const PolyVector& b);

// Divergence for the constant volume form: (dv a)^{J} = sum_i d_i a^{iJ}.
PolyVector divergence(const PolyVector& a);

// dv[a,b] - [dv a, b] - (-1)^{deg a - 1} [a, dv b]; identically zero.
PolyVector divergence_derivation_defect(const PolyVector& a, const PolyVector& b);

// Text form, e.g. "x2 d1^d2 + d3" (di = d/dx_i, ^ = wedge). Coefficient
// syntax is the Polynomial syntax. Degree-0 terms are bare polynomials;
// mixed degrees in one expression are rejected.
std::string to_string(const PolyVector& v);
PolyVector parse_polyvector(const std::string& s, int dim);

}  // namespace dq
