#pragma once

#include <map>
#include <string>
#include <vector>

#include "dq/rational.hpp"

namespace dq {

// Exponent vector of a monomial, length = ambient dimension.
using MultiIndex = std::vector<int>;

int mi_total(const MultiIndex& e);
MultiIndex mi_zero(int dim);
MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b);

// Polynomial over Q in variables x1..xd, stored as monomial -> coefficient.
// A default-constructed Polynomial (dim 0, no terms) acts as a universal
// zero: arithmetic with any dimension is allowed and adopts the other
// operand's dimension.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, const Rat& c);
  static Polynomial monomial(int dim, MultiIndex e, const Rat& c);
  static Polynomial coordinate(int dim, int i);  // x_i, 1-based

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, Rat>& terms() const { return terms_; }
  Rat coeff(const MultiIndex& e) const;

  void add_term(const MultiIndex& e, const Rat& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  Polynomial& operator*=(const Rat& c);

  // Partial derivative with respect to x_i (1-based).
  Polynomial partial(int i) const;

  // Apply a composite derivative given as a multi-index.
  Polynomial partial(const MultiIndex& a) const;

  int total_degree() const;  // max over monomials; -1 for zero

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

 private:
  int dim_ = 0;
  std::map<MultiIndex, Rat> terms_;

  void adopt_dim(const Polynomial& o);
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rat& c, Polynomial p);

// Text form, e.g. "3/2 x1^2 x3 - x2 + 1". Zero renders as "0".
std::string to_string(const Polynomial& p);
// Parses the same syntax. Throws std::runtime_error on malformed input.
Polynomial parse_polynomial(const std::string& s, int dim);

}  // namespace dq
