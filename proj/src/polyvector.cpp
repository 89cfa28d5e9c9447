#include "dq/polyvector.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dq {

int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

PolyVector PolyVector::function(Polynomial f) {
  PolyVector v(f.dim(), 0);
  v.add_term({}, std::move(f));
  return v;
}

PolyVector PolyVector::term(int dim, std::vector<int> idx, Polynomial c) {
  PolyVector v(dim, (int)idx.size());
  v.add_term(std::move(idx), std::move(c));
  return v;
}

Polynomial PolyVector::comp(const std::vector<int>& sorted_idx) const {
  auto it = comps_.find(sorted_idx);
  return it == comps_.end() ? Polynomial() : it->second;
}

Polynomial PolyVector::tensor(const std::vector<int>& idx) const {
  std::vector<int> s(idx);
  int sign = sort_with_sign(s);
  if (sign == 0) return Polynomial();
  Polynomial c = comp(s);
  if (sign < 0) c = -c;
  return c;
}

void PolyVector::add_term(std::vector<int> idx, Polynomial c) {
  if ((int)idx.size() != degree_) throw std::runtime_error("polyvector degree mismatch");
  if (c.is_zero()) return;
  int sign = sort_with_sign(idx);
  if (sign == 0) return;
  if (sign < 0) c = -c;
  auto it = comps_.find(idx);
  if (it == comps_.end()) {
    comps_.emplace(std::move(idx), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

void PolyVector::adopt(const PolyVector& o) {
  if (is_zero() && dim_ == 0 && degree_ == 0) {
    dim_ = o.dim_;
    degree_ = o.degree_;
    return;
  }
  if (o.is_zero() && o.dim_ == 0 && o.degree_ == 0) return;
  if (dim_ != o.dim_ || degree_ != o.degree_)
    throw std::runtime_error("polyvector shape mismatch");
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
  adopt(o);
  for (const auto& [idx, c] : o.comps_) {
    auto [it, fresh] = comps_.emplace(idx, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }
  return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o) { return *this += -o; }

PolyVector PolyVector::operator-() const {
  PolyVector r(dim_, degree_);
  for (const auto& [idx, c] : comps_) r.comps_.emplace(idx, -c);
  return r;
}

PolyVector& PolyVector::operator*=(const Rat& c) {
  if (c == 0) {
    comps_.clear();
    return *this;
  }
  for (auto& [idx, v] : comps_) v *= c;
  return *this;
}

bool PolyVector::operator==(const PolyVector& o) const {
  if (is_zero() && o.is_zero()) return true;
  return dim_ == o.dim_ && degree_ == o.degree_ && comps_ == o.comps_;
}

PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
PolyVector operator*(const Rat& c, PolyVector v) { return v *= c; }

PolyVector wedge(const PolyVector& a, const PolyVector& b) {
  if (a.is_zero() || b.is_zero()) return PolyVector();
  if (a.dim() != b.dim()) throw std::runtime_error("polyvector dimension mismatch");
  PolyVector r(a.dim(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.comps())
    for (const auto& [ib, cb] : b.comps()) {
      std::vector<int> idx(ia);
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(std::move(idx), ca * cb);
    }
  return r;
}

PolyVector insert_first(int i, const PolyVector& a) {
  if (a.is_zero() || a.degree() == 0) return PolyVector();
  PolyVector r(a.dim(), a.degree() - 1);
  for (const auto& [idx, c] : a.comps()) {
    auto it = std::find(idx.begin(), idx.end(), i);
    if (it == idx.end()) continue;
    int pos = (int)(it - idx.begin());
    std::vector<int> rest;
    rest.reserve(idx.size() - 1);
    for (int v : idx)
      if (v != i) rest.push_back(v);
    r.add_term(std::move(rest), pos % 2 == 0 ? c : -c);
  }
  return r;
}

namespace {

PolyVector coeff_partial(int i, const PolyVector& a) {
  PolyVector r(a.dim(), a.degree());
  for (const auto& [idx, c] : a.comps()) r.add_term(idx, c.partial(i));
  return r;
}

}  // namespace

PolyVector bullet(const PolyVector& a, const PolyVector& b) {
  if (a.is_zero() || b.is_zero() || a.degree() == 0) return PolyVector();
  PolyVector r(a.dim(), a.degree() + b.degree() - 1);
  for (int i = 1; i <= a.dim(); ++i) {
    PolyVector left = insert_first(i, a);
    if (left.is_zero()) continue;
    r += wedge(left, coeff_partial(i, b));
  }
  return r;
}

PolyVector schouten(const PolyVector& a, const PolyVector& b) {
  if (a.is_zero() || b.is_zero()) return PolyVector();
  int ka = a.degree(), kb = b.degree();
  PolyVector r = bullet(a, b);
  PolyVector s = bullet(b, a);
  if ((ka * kb) % 2 == 0)
    r += s;
  else
    r -= s;
  if ((ka - 1) % 2 != 0) r = -r;
  return r;
}

PolyVector divergence(const PolyVector& a) {
  if (a.is_zero() || a.degree() == 0) return PolyVector();
  PolyVector r(a.dim(), a.degree() - 1);
  for (const auto& [idx, c] : a.comps())
    for (size_t p = 0; p < idx.size(); ++p) {
      std::vector<int> rest;
      rest.reserve(idx.size() - 1);
      for (size_t q = 0; q < idx.size(); ++q)
        if (q != p) rest.push_back(idx[q]);
      Polynomial d = c.partial(idx[p]);
      r.add_term(std::move(rest), p % 2 == 0 ? d : -d);
    }
  return r;
}

PolyVector divergence_derivation_defect(const PolyVector& a, const PolyVector& b) {
  PolyVector lhs = divergence(schouten(a, b));
  PolyVector r1 = schouten(divergence(a), b);
  PolyVector r2 = schouten(a, divergence(b));
  if ((a.degree() - 1) % 2 != 0) r2 = -r2;
  return lhs - r1 - r2;
}

std::string to_string(const PolyVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : v.comps()) {
    std::string cs = to_string(c);
    bool simple = c.terms().size() == 1;
    if (!first) {
      if (simple && cs[0] == '-') {
        os << " - ";
        cs.erase(0, 1);
        while (!cs.empty() && cs[0] == ' ') cs.erase(0, 1);
      } else {
        os << " + ";
      }
    }
    first = false;
    bool trivial = (cs == "1") && !idx.empty();
    if (!trivial) {
      if (simple || idx.empty())
        os << cs;
      else
        os << "(" << cs << ")";
    }
    for (size_t p = 0; p < idx.size(); ++p) {
      if (p > 0)
        os << "^";
      else if (!trivial)
        os << " ";
      os << "d" << idx[p];
    }
  }
  return os.str();
}

PolyVector parse_polyvector(const std::string& s, int dim) {
  // Split on top-level + and - (a leading sign belongs to the first term).
  PolyVector out;
  size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  };
  skip();
  if (i >= s.size()) throw std::runtime_error("empty polyvector");
  bool first = true;
  while (true) {
    skip();
    if (i >= s.size()) break;
    Rat sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (!first) {
      throw std::runtime_error("expected '+' or '-' between polyvector terms");
    }
    first = false;
    skip();
    // coefficient: everything before the first 'd' factor in this term;
    // a parenthesized polynomial counts as one factor
    size_t start = i;
    int depth = 0;
    while (i < s.size()) {
      char ch = s[i];
      if (ch == '(') ++depth;
      else if (ch == ')') --depth;
      else if (depth == 0 && (ch == '+' || ch == '-' || ch == 'd')) break;
      ++i;
    }
    if (depth != 0) throw std::runtime_error("unbalanced parentheses");
    std::string coefs = s.substr(start, i - start);
    {
      size_t e = coefs.find_last_not_of(" \t");
      coefs = (e == std::string::npos) ? "" : coefs.substr(0, e + 1);
    }
    if (coefs.size() >= 2 && coefs.front() == '(' && coefs.back() == ')')
      coefs = coefs.substr(1, coefs.size() - 2);
    Polynomial c = coefs.empty() ? Polynomial::constant(dim, 1) : parse_polynomial(coefs, dim);
    c *= sign;
    std::vector<int> idx;
    while (i < s.size() && s[i] == 'd') {
      ++i;
      size_t ds = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
      if (i == ds) throw std::runtime_error("expected index after 'd'");
      int v = std::stoi(s.substr(ds, i - ds));
      if (v < 1 || v > dim) throw std::runtime_error("d index out of range");
      idx.push_back(v);
      skip();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip();
        if (i >= s.size() || s[i] != 'd') throw std::runtime_error("expected 'd' after '^'");
      } else {
        break;
      }
    }
    PolyVector t = PolyVector::term(dim, std::move(idx), std::move(c));
    if (!out.is_zero() && !t.is_zero() && out.degree() != t.degree())
      throw std::runtime_error("mixed degrees in polyvector expression");
    if (out.is_zero() && out.dim() == 0)
      out = t;
    else
      out += t;
  }
  return out;
}

}  // namespace dq
