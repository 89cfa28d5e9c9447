#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "dq/meas.hpp"
#include "dq/polynomial.hpp"

namespace dq {

// Scalar plumbing shared by the exact (Rat) and measured (Meas)
// instantiations of PolyDiffOp.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rat> {
  static bool is_zero(const Rat& s) { return s == 0; }
  static Rat scale(const Rat& s, const Rat& c) { return s * c; }
  static double mag(const Rat& s) { return std::fabs(to_double(s)); }
  static double sigma(const Rat&) { return 0.0; }
};

template <>
struct ScalarOps<Meas> {
  static bool is_zero(const Meas& s) { return s.v == 0 && s.var == 0; }
  static Meas scale(const Meas& s, const Rat& c) {
    double d = to_double(c);
    return Meas(s.v * d, s.var * d * d);
  }
  static double mag(const Meas& s) { return std::fabs(s.v); }
  static double sigma(const Meas& s) { return s.sigma(); }
};

// One monomial term of a polydifferential operator: the coefficient's
// monomial exponent and a composite derivative per argument slot.
struct OpKey {
  MultiIndex coef;
  std::vector<MultiIndex> derivs;
  auto operator<=>(const OpKey&) const = default;
};

// Polydifferential operator on Q^d with polynomial coefficients,
//   Phi(a_0,...,a_{r-1}) = sum_terms  s * x^coef * prod_j d^{derivs[j]} a_j.
// Terms are kept in a canonical sorted map, so equality is decidable
// coefficient by coefficient. The scalar S is Rat (exact) or Meas
// (value with variance, for weight-assembled operators).
template <class S>
class PolyDiffOp {
 public:
  PolyDiffOp() = default;
  PolyDiffOp(int dim, int arity) : dim_(dim), arity_(arity) {}

  // The 2-ary multiplication operator m(a,b) = ab.
  static PolyDiffOp mult(int dim) {
    PolyDiffOp op(dim, 2);
    op.add_term(OpKey{mi_zero(dim), {mi_zero(dim), mi_zero(dim)}}, S(1));
    return op;
  }

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<OpKey, S>& terms() const { return terms_; }

  void add_term(const OpKey& k, const S& s) {
    if (ScalarOps<S>::is_zero(s)) return;
    if ((int)k.derivs.size() != arity_ || (int)k.coef.size() != dim_)
      throw std::runtime_error("operator term shape mismatch");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, s);
    } else {
      it->second += s;
      if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  // Adds  s * c(x) * prod_j d^{derivs[j]}, expanding the polynomial
  // coefficient into monomials.
  void add_poly_term(const Polynomial& c, const std::vector<MultiIndex>& derivs, const S& s) {
    for (const auto& [e, r] : c.terms()) add_term(OpKey{e, derivs}, ScalarOps<S>::scale(s, r));
  }

  PolyDiffOp& operator+=(const PolyDiffOp& o) {
    adopt(o);
    for (const auto& [k, s] : o.terms_) add_term(k, s);
    return *this;
  }
  PolyDiffOp& operator-=(const PolyDiffOp& o) {
    adopt(o);
    for (const auto& [k, s] : o.terms_) add_term(k, -s);
    return *this;
  }
  PolyDiffOp operator-() const {
    PolyDiffOp r(dim_, arity_);
    for (const auto& [k, s] : terms_) r.terms_.emplace(k, -s);
    return r;
  }
  PolyDiffOp& operator*=(const Rat& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, s] : terms_) s = ScalarOps<S>::scale(s, c);
    return *this;
  }

  friend PolyDiffOp operator+(PolyDiffOp a, const PolyDiffOp& b) { return a += b; }
  friend PolyDiffOp operator-(PolyDiffOp a, const PolyDiffOp& b) { return a -= b; }
  friend PolyDiffOp operator*(const Rat& c, PolyDiffOp op) { return op *= c; }

  bool operator==(const PolyDiffOp& o) const {
    if (is_zero() && o.is_zero()) return true;
    return dim_ == o.dim_ && arity_ == o.arity_ && terms_ == o.terms_;
  }

  double max_mag() const {
    double m = 0;
    for (const auto& [k, s] : terms_) m = std::max(m, ScalarOps<S>::mag(s));
    return m;
  }
  double max_sigma() const {
    double m = 0;
    for (const auto& [k, s] : terms_) m = std::max(m, ScalarOps<S>::sigma(s));
    return m;
  }

 private:
  int dim_ = 0;
  int arity_ = 0;
  std::map<OpKey, S> terms_;

  void adopt(const PolyDiffOp& o) {
    if (dim_ == o.dim_ && arity_ == o.arity_) return;
    if (is_zero() && dim_ == 0 && arity_ == 0) {
      dim_ = o.dim_;
      arity_ = o.arity_;
      return;
    }
    if (o.is_zero() && o.dim_ == 0 && o.arity_ == 0) return;
    throw std::runtime_error("operator shape mismatch");
  }
};

using OpQ = PolyDiffOp<Rat>;
using OpM = PolyDiffOp<Meas>;

// Applies an exact operator to polynomial arguments.
Polynomial apply(const OpQ& op, const std::vector<Polynomial>& args);

// Maps scalars Rat -> Meas (exact values, zero variance).
OpM to_meas(const OpQ& op);
// Scales every Rat term by a Meas factor.
OpM meas_scale(const OpQ& op, const Meas& w);

namespace detail {

// Enumerates splittings of a multi-index into `parts` ordered summands,
// calling f(parts-vector, multinomial coefficient).
void for_each_split(const MultiIndex& a, int parts,
                    const std::function<void(const std::vector<MultiIndex>&, const Rat&)>& f);

}  // namespace detail

// Plain (unsigned) insertion of psi into argument slot `slot` of phi, with
// phi's slot derivative distributed over psi by the Leibniz rule.
template <class S>
PolyDiffOp<S> compose_at(const PolyDiffOp<S>& phi, int slot, const PolyDiffOp<S>& psi) {
  if (slot < 0 || slot >= phi.arity()) throw std::runtime_error("compose_at: bad slot");
  if (phi.is_zero() || psi.is_zero()) return PolyDiffOp<S>();
  if (phi.dim() != psi.dim()) throw std::runtime_error("compose_at: dim mismatch");
  int d = phi.dim();
  int q = psi.arity();
  PolyDiffOp<S> out(d, phi.arity() + q - 1);
  for (const auto& [kp, sp] : phi.terms()) {
    for (const auto& [kq, sq] : psi.terms()) {
      S s = sp * sq;
      // Split phi's slot derivative over: psi's coefficient monomial and
      // each of psi's q argument slots.
      detail::for_each_split(kp.derivs[slot], q + 1,
                             [&](const std::vector<MultiIndex>& mu, const Rat& mult) {
        // derivative of the coefficient monomial x^{kq.coef}
        Rat fall = mult;
        MultiIndex ce = kq.coef;
        for (int v = 0; v < d; ++v) {
          for (int t = 0; t < mu[0][v]; ++t) {
            if (ce[v] == 0) {
              fall = 0;
              break;
            }
            fall *= ce[v];
            ce[v] -= 1;
          }
          if (fall == 0) break;
        }
        if (fall == 0) return;
        OpKey k;
        k.coef = mi_add(kp.coef, ce);
        k.derivs.reserve(phi.arity() + q - 1);
        for (int j = 0; j < slot; ++j) k.derivs.push_back(kp.derivs[j]);
        for (int t = 0; t < q; ++t) k.derivs.push_back(mi_add(kq.derivs[t], mu[t + 1]));
        for (int j = slot + 1; j < phi.arity(); ++j) k.derivs.push_back(kp.derivs[j]);
        out.add_term(k, ScalarOps<S>::scale(s, fall));
      });
    }
  }
  return out;
}

// Brace operation phi{psi_1,...,psi_r}: sum over strictly increasing slot
// tuples with the Gerstenhaber sign (-1)^{sum_t i_t (arity(psi_t)-1)},
// i_t = shifted position of psi_t's argument block.
template <class S>
PolyDiffOp<S> braces(const PolyDiffOp<S>& phi, const std::vector<PolyDiffOp<S>>& psis) {
  int r = (int)psis.size();
  if (r == 0) return phi;
  int final_arity = phi.arity();
  for (const auto& p : psis) final_arity += p.arity() - 1;
  if (final_arity < 0) return PolyDiffOp<S>();
  PolyDiffOp<S> out(phi.dim(), final_arity);
  std::vector<int> slots(r);
  // enumerate 0 <= s_1 < s_2 < ... < s_r < phi.arity()
  std::function<void(int, int)> rec = [&](int t, int lo) {
    if (t == r) {
      int sign = 0;
      PolyDiffOp<S> cur = phi;
      int off = 0;  // accumulated arity shift from already-inserted psis
      for (int u = 0; u < r; ++u) {
        int pos = slots[u] + off;
        sign += pos * (psis[u].arity() - 1);
        cur = compose_at(cur, pos, psis[u]);
        off += psis[u].arity() - 1;
      }
      if (sign % 2 == 0)
        out += cur;
      else
        out -= cur;
      return;
    }
    for (int s = lo; s < phi.arity(); ++s) {
      slots[t] = s;
      rec(t + 1, s + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Gerstenhaber bracket [phi,psi] = phi{psi} - (-1)^{(p-1)(q-1)} psi{phi},
// p,q the arities.
template <class S>
PolyDiffOp<S> gerstenhaber(const PolyDiffOp<S>& phi, const PolyDiffOp<S>& psi) {
  PolyDiffOp<S> a = braces(phi, {psi});
  PolyDiffOp<S> b = braces(psi, {phi});
  int e = (phi.arity() - 1) * (psi.arity() - 1);
  return e % 2 == 0 ? a - b : a + b;
}

// Hochschild differential d phi = [m, phi].
template <class S>
PolyDiffOp<S> hochschild_diff(const PolyDiffOp<S>& phi) {
  return gerstenhaber(PolyDiffOp<S>::mult(phi.dim()), phi);
}

// Cup product (phi u psi)(a_1,..,a_{p+q}) = phi(a_1,..,a_p) psi(a_{p+1},..),
// i.e. plain concatenation; this convention is strictly associative at the
// cochain level (m{phi,psi} only agrees with it up to the insertion sign).
template <class S>
PolyDiffOp<S> cup(const PolyDiffOp<S>& phi, const PolyDiffOp<S>& psi) {
  PolyDiffOp<S> out(phi.dim(), phi.arity() + psi.arity());
  for (const auto& [ka, sa] : phi.terms())
    for (const auto& [kb, sb] : psi.terms()) {
      OpKey k;
      k.coef = mi_add(ka.coef, kb.coef);
      k.derivs = ka.derivs;
      k.derivs.insert(k.derivs.end(), kb.derivs.begin(), kb.derivs.end());
      out.add_term(k, sa * sb);
    }
  return out;
}

// A cyclic cochain in CC^k, represented by a (k+1)-ary operator whose
// slot-0 derivative orders are all zero (the normal form under integration
// by parts against the constant volume form).
template <class S>
struct CyclicClass {
  PolyDiffOp<S> rep;
  int k() const { return rep.arity() - 1; }
};

// iota(phi)(a_0,...,a_k) = a_0 * phi(a_1,...,a_k).
template <class S>
CyclicClass<S> iota(const PolyDiffOp<S>& phi) {
  PolyDiffOp<S> r(phi.dim(), phi.arity() + 1);
  for (const auto& [k, s] : phi.terms()) {
    OpKey nk;
    nk.coef = k.coef;
    nk.derivs.reserve(k.derivs.size() + 1);
    nk.derivs.push_back(mi_zero(phi.dim()));
    nk.derivs.insert(nk.derivs.end(), k.derivs.begin(), k.derivs.end());
    r.add_term(nk, s);
  }
  return CyclicClass<S>{std::move(r)};
}

// Normal form of a (k+1)-ary operator as a functional
//   (a_0,...,a_k) -> int Psi(a_0,...,a_k) dx:
// slot-0 derivatives are moved off by parts,
//   int (d^a a_0) F = (-1)^{|a|} int a_0 d^a F,
// and d^a is distributed over the coefficient and the other slots.
template <class S>
CyclicClass<S> ibp_normalize(const PolyDiffOp<S>& psi) {
  int d = psi.dim();
  int n = psi.arity();
  PolyDiffOp<S> out(d, n);
  for (const auto& [key, s] : psi.terms()) {
    const MultiIndex& a0 = key.derivs[0];
    if (mi_total(a0) == 0) {
      out.add_term(key, s);
      continue;
    }
    int par = mi_total(a0) % 2;
    detail::for_each_split(a0, n, [&](const std::vector<MultiIndex>& mu, const Rat& mult) {
      // mu[0] hits the coefficient monomial, mu[j] hits slot j (j >= 1)
      Rat fall = mult;
      MultiIndex ce = key.coef;
      for (int v = 0; v < d; ++v) {
        for (int t = 0; t < mu[0][v]; ++t) {
          if (ce[v] == 0) {
            fall = 0;
            break;
          }
          fall *= ce[v];
          ce[v] -= 1;
        }
        if (fall == 0) break;
      }
      if (fall == 0) return;
      if (par) fall = -fall;
      OpKey k;
      k.coef = ce;
      k.derivs.resize(n);
      k.derivs[0] = mi_zero(d);
      for (int j = 1; j < n; ++j) k.derivs[j] = mi_add(key.derivs[j], mu[j]);
      out.add_term(k, ScalarOps<S>::scale(s, fall));
    });
  }
  return CyclicClass<S>{std::move(out)};
}

// Inverse of iota on normalized representatives: strips slot 0.
template <class S>
PolyDiffOp<S> iota_inverse(const CyclicClass<S>& c) {
  PolyDiffOp<S> r(c.rep.dim(), c.rep.arity() - 1);
  for (const auto& [k, s] : c.rep.terms()) {
    if (mi_total(k.derivs[0]) != 0) throw std::runtime_error("iota_inverse: unnormalized input");
    OpKey nk;
    nk.coef = k.coef;
    nk.derivs.assign(k.derivs.begin() + 1, k.derivs.end());
    r.add_term(nk, s);
  }
  return r;
}

// Cyclic rotation (sigma Psi)(a_0,...,a_k) = (-1)^k Psi(a_1,...,a_k,a_0)
// on raw (k+1)-ary representatives.
template <class S>
PolyDiffOp<S> cyclic_shift(const PolyDiffOp<S>& psi) {
  int n = psi.arity();
  PolyDiffOp<S> r(psi.dim(), n);
  bool neg = (n - 1) % 2 != 0;
  for (const auto& [k, s] : psi.terms()) {
    OpKey nk;
    nk.coef = k.coef;
    nk.derivs.resize(n);
    nk.derivs[0] = k.derivs[n - 1];
    for (int j = 1; j < n; ++j) nk.derivs[j] = k.derivs[j - 1];
    r.add_term(nk, neg ? -s : s);
  }
  return r;
}

// sigma-invariance of the class of psi, tested on IBP normal forms. For
// S = Rat use tol = 0; for Meas, tol bounds |residual| per term.
template <class S>
bool is_cyclically_invariant(const PolyDiffOp<S>& psi, double tol = 0.0) {
  PolyDiffOp<S> diff = ibp_normalize(cyclic_shift(psi)).rep - ibp_normalize(psi).rep;
  return diff.max_mag() <= tol;
}

}  // namespace dq
