#include "dq/hochschild.hpp"

namespace dq {

Polynomial apply(const OpQ& op, const std::vector<Polynomial>& args) {
  if ((int)args.size() != op.arity()) throw std::runtime_error("apply: arity mismatch");
  Polynomial out(op.dim());
  for (const auto& [k, s] : op.terms()) {
    Polynomial t = Polynomial::monomial(op.dim(), k.coef, s);
    for (int j = 0; j < op.arity() && !t.is_zero(); ++j) t = t * args[j].partial(k.derivs[j]);
    out += t;
  }
  return out;
}

OpM to_meas(const OpQ& op) { return meas_scale(op, Meas(1.0, 0.0)); }

OpM meas_scale(const OpQ& op, const Meas& w) {
  OpM r(op.dim(), op.arity());
  for (const auto& [k, s] : op.terms()) r.add_term(k, ScalarOps<Meas>::scale(w, s));
  return r;
}

namespace detail {

namespace {

void split_rec(const MultiIndex& a, int parts, int coord, std::vector<MultiIndex>& mu,
               MultiIndex& rem, Rat mult, const std::function<void(const std::vector<MultiIndex>&, const Rat&)>& f) {
  // Distribute every coordinate of `a` over `parts` summands; `mult`
  // accumulates the product of per-coordinate multinomial coefficients.
  if (coord == (int)a.size()) {
    f(mu, mult);
    return;
  }
  // Distribute a[coord] over parts; multinomial = a! / prod(choices!)
  std::function<void(int, int, Rat, Rat)> dist = [&](int p, int left, Rat fact, Rat denom) {
    if (p == parts - 1) {
      mu[p][coord] = left;
      Rat dd = denom * factorial(left);
      split_rec(a, parts, coord + 1, mu, rem, mult * fact / dd, f);
      mu[p][coord] = 0;
      return;
    }
    for (int c = 0; c <= left; ++c) {
      mu[p][coord] = c;
      dist(p + 1, left - c, fact, denom * factorial(c));
      mu[p][coord] = 0;
    }
  };
  dist(0, a[coord], factorial(a[coord]), Rat(1));
}

}  // namespace

void for_each_split(const MultiIndex& a, int parts,
                    const std::function<void(const std::vector<MultiIndex>&, const Rat&)>& f) {
  if (parts <= 0) throw std::runtime_error("for_each_split: parts must be positive");
  std::vector<MultiIndex> mu(parts, mi_zero((int)a.size()));
  MultiIndex rem = a;
  split_rec(a, parts, 0, mu, rem, Rat(1), f);
}

}  // namespace detail

}  // namespace dq
