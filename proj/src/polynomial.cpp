#include "dq/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dq {

int mi_total(const MultiIndex& e) {
  int t = 0;
  for (int v : e) t += v;
  return t;
}

MultiIndex mi_zero(int dim) { return MultiIndex(dim, 0); }

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Polynomial Polynomial::constant(int dim, const Rat& c) {
  Polynomial p(dim);
  p.add_term(mi_zero(dim), c);
  return p;
}

Polynomial Polynomial::monomial(int dim, MultiIndex e, const Rat& c) {
  Polynomial p(dim);
  p.add_term(std::move(e), c);
  return p;
}

Polynomial Polynomial::coordinate(int dim, int i) {
  MultiIndex e = mi_zero(dim);
  e.at(i - 1) = 1;
  return monomial(dim, std::move(e), 1);
}

Rat Polynomial::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Polynomial::add_term(const MultiIndex& e, const Rat& c) {
  if (c == 0) return;
  if ((int)e.size() != dim_) throw std::runtime_error("monomial dim mismatch");
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::adopt_dim(const Polynomial& o) {
  if (dim_ == o.dim_) return;
  if (is_zero() && dim_ == 0) {
    dim_ = o.dim_;
    return;
  }
  if (o.is_zero() && o.dim_ == 0) return;
  throw std::runtime_error("polynomial dimension mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  adopt_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  adopt_dim(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::partial(int i) const {
  Polynomial r(dim_);
  for (const auto& [e, c] : terms_) {
    int k = e.at(i - 1);
    if (k == 0) continue;
    MultiIndex f = e;
    f[i - 1] -= 1;
    r.add_term(f, c * k);
  }
  return r;
}

Polynomial Polynomial::partial(const MultiIndex& a) const {
  Polynomial r = *this;
  for (size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < a[i]; ++k) r = r.partial((int)i + 1);
  return r;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, mi_total(e));
  return d;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (is_zero() && o.is_zero()) return true;
  return dim_ == o.dim_ && terms_ == o.terms_;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  if (a.dim() != b.dim()) throw std::runtime_error("polynomial dimension mismatch");
  Polynomial r(a.dim());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) r.add_term(mi_add(ea, eb), ca * cb);
  return r;
}

Polynomial operator*(const Rat& c, Polynomial p) { return p *= c; }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool wrote = false;
    if (a != 1 || mi_total(e) == 0) {
      os << a;
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << " ";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
};

Int parse_int(Cursor& c) {
  c.skip();
  size_t start = c.i;
  while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) ++c.i;
  if (c.i == start) throw std::runtime_error("expected integer in polynomial at '" + c.s.substr(start) + "'");
  return Int(c.s.substr(start, c.i - start));
}

}  // namespace

Polynomial parse_polynomial(const std::string& s, int dim) {
  Polynomial p(dim);
  Cursor c{s};
  if (c.done()) throw std::runtime_error("empty polynomial");
  bool first = true;
  while (!c.done()) {
    Rat sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      if (ch == '-') sign = -1;
      ++c.i;
    } else if (!first) {
      throw std::runtime_error("expected '+' or '-' between polynomial terms");
    }
    first = false;
    // term: optional rational coefficient, then factors xK[^E]
    Rat coef = sign;
    MultiIndex e = mi_zero(dim);
    bool any = false;
    if (std::isdigit((unsigned char)c.peek())) {
      Int num = parse_int(c);
      Int den = 1;
      if (c.peek() == '/') {
        ++c.i;
        den = parse_int(c);
        if (den == 0) throw std::runtime_error("zero denominator");
      }
      coef *= Rat(num, den);
      any = true;
    }
    while (c.peek() == 'x') {
      ++c.i;
      Int vi = parse_int(c);
      int v = (int)vi;
      if (v < 1 || v > dim) throw std::runtime_error("variable index out of range");
      int ex = 1;
      if (c.peek() == '^') {
        ++c.i;
        ex = (int)parse_int(c);
        if (ex < 0) throw std::runtime_error("negative exponent");
      }
      e[v - 1] += ex;
      any = true;
    }
    if (!any) throw std::runtime_error("empty term in polynomial");
    p.add_term(e, coef);
  }
  return p;
}

}  // namespace dq
