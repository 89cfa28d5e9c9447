#include "dq/star.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace dq {

void UnimodularPoisson::check_shapes(int dim) const {
  if ((int)pi.size() != order + 1 || (int)f.size() != order + 1)
    throw std::runtime_error("poisson structure series length mismatch");
  if (!pi[0].is_zero() || !f[0].is_zero())
    throw std::runtime_error("poisson structure must start at hbar^1");
  for (const auto& v : pi)
    if (!v.is_zero() && (v.degree() != 2 || v.dim() != dim))
      throw std::runtime_error("pi coefficients must be bivectors");
  for (const auto& v : f)
    if (!v.is_zero() && (v.degree() != 0 || v.dim() != dim))
      throw std::runtime_error("f coefficients must be functions");
}

Report check_maurer_cartan(const UnimodularPoisson& p) {
  Report rep;
  rep.title = "Maurer-Cartan equation";
  rep.sigma_ceiling = 0.0;
  for (int r = 0; r <= p.order; ++r) {
    PolyVector tri;  // 1/2 [P,P] at hbar^r
    PolyVector vec;  // dv P + [P,F] at hbar^r
    for (int a = 0; a <= r; ++a) {
      int b = r - a;
      if (!p.pi[a].is_zero() && !p.pi[b].is_zero()) {
        PolyVector t = schouten(p.pi[a], p.pi[b]);
        t *= Rat(1, 2);
        tri += t;
      }
      if (!p.pi[a].is_zero() && !p.f[b].is_zero()) vec += schouten(p.pi[a], p.f[b]);
    }
    vec += divergence(p.pi[r]);
    std::ostringstream l1, l2;
    l1 << "hbar^" << r << " trivector part";
    l2 << "hbar^" << r << " vector part";
    double m1 = 0, m2 = 0;
    for (const auto& [idx, c] : tri.comps())
      for (const auto& [e, q] : c.terms()) m1 = std::max(m1, std::fabs(to_double(q)));
    for (const auto& [idx, c] : vec.comps())
      for (const auto& [e, q] : c.terms()) m2 = std::max(m2, std::fabs(to_double(q)));
    rep.add(l1.str(), Meas(m1, 0.0));
    rep.add(l2.str(), Meas(m2, 0.0));
  }
  rep.finish();
  return rep;
}

StarProduct build_star(const UnimodularPoisson& p, int dim, WeightEngine& eng) {
  p.check_shapes(dim);
  StarProduct s;
  s.order = p.order;
  s.m.resize(p.order + 1);
  s.m[0] = to_meas(OpQ::mult(dim));
  for (int r = 1; r <= p.order; ++r) {
    OpM acc(dim, 2);
    // ordered compositions r = a_1 + ... + a_j, a_i >= 1
    std::vector<int> parts;
    std::function<void(int)> comp = [&](int left) {
      if (left == 0) {
        int j = (int)parts.size();
        // expand each slot into pi_{a} or u f_{a}
        std::vector<UInput> xs(j);
        std::function<void(int)> pick = [&](int t) {
          if (t == j) {
            OpM term = taylor_as_op(xs, eng);
            if (!term.is_zero()) {
              term *= Rat(1) / factorial(j);
              acc += term;
            }
            return;
          }
          if (!p.pi[parts[t]].is_zero()) {
            xs[t] = UInput{0, p.pi[parts[t]]};
            pick(t + 1);
          }
          if (!p.f[parts[t]].is_zero()) {
            xs[t] = UInput{1, p.f[parts[t]]};
            pick(t + 1);
          }
        };
        pick(0);
        return;
      }
      for (int a = 1; a <= left; ++a) {
        parts.push_back(a);
        comp(left - a);
        parts.pop_back();
      }
    };
    comp(r);
    s.m[r] = std::move(acc);
  }
  return s;
}

Report check_associativity(const StarProduct& s, double tol_sigmas, double sigma_ceiling) {
  Report rep;
  rep.tol_sigmas = tol_sigmas;
  rep.sigma_ceiling = sigma_ceiling;
  rep.title = "star product associativity";
  for (int r = 0; r <= s.order; ++r) {
    OpM res;
    for (int a = 0; a <= r; ++a) {
      int b = r - a;
      if (s.m[a].is_zero() || s.m[b].is_zero()) continue;
      res += compose_at(s.m[a], 0, s.m[b]);
      res -= compose_at(s.m[a], 1, s.m[b]);
    }
    std::ostringstream lbl;
    lbl << "hbar^" << r;
    if (res.is_zero()) {
      rep.add(lbl.str() + " (exact)", Meas(0.0, 0.0));
    } else {
      for (const auto& [k, v] : res.terms()) rep.add(lbl.str() + " " + opkey_label(k), v);
    }
  }
  rep.finish();
  return rep;
}

Report check_closed(const StarProduct& s, double tol_sigmas, double sigma_ceiling) {
  Report rep;
  rep.tol_sigmas = tol_sigmas;
  rep.sigma_ceiling = sigma_ceiling;
  rep.title = "star product closedness";
  for (int r = 0; r <= s.order; ++r) {
    std::ostringstream lbl;
    lbl << "hbar^" << r;
    if (s.m[r].is_zero()) {
      rep.add(lbl.str() + " (exact)", Meas(0.0, 0.0));
      continue;
    }
    OpM psi = iota(s.m[r]).rep;
    OpM diff = ibp_normalize(cyclic_shift(psi)).rep - ibp_normalize(psi).rep;
    if (diff.is_zero()) {
      rep.add(lbl.str() + " (exact)", Meas(0.0, 0.0));
    } else {
      for (const auto& [k, v] : diff.terms()) rep.add(lbl.str() + " " + opkey_label(k), v);
    }
  }
  rep.finish();
  return rep;
}

OpQ identity_op(int dim) {
  OpQ op(dim, 1);
  op.add_term(OpKey{mi_zero(dim), {mi_zero(dim)}}, Rat(1));
  return op;
}

StarProduct gauge_transform_star(const StarProduct& s, const std::vector<OpQ>& gauge) {
  int N = s.order;
  if ((int)gauge.size() < N + 1) throw std::runtime_error("gauge series too short");
  int dim = s.m[0].dim();
  // D and E = id - D as hbar series of 1-ary operators
  std::vector<OpQ> D(N + 1), E(N + 1), Dinv(N + 1);
  D[0] = identity_op(dim);
  for (int r = 1; r <= N; ++r) {
    D[r] = gauge[r];
    if (!D[r].is_zero() && D[r].arity() != 1) throw std::runtime_error("gauge must be 1-ary");
    E[r] = -D[r];
  }
  // Neumann series D^{-1} = sum_k E^k
  Dinv[0] = identity_op(dim);
  std::vector<OpQ> Ek = Dinv;  // E^0 = id
  for (int k = 1; k <= N; ++k) {
    std::vector<OpQ> next(N + 1);
    for (int a = 1; a <= N; ++a)
      for (int b = 0; a + b <= N; ++b)
        if (!E[a].is_zero() && !Ek[b].is_zero()) next[a + b] += compose_at(E[a], 0, Ek[b]);
    Ek = std::move(next);
    for (int r = 0; r <= N; ++r) Dinv[r] += Ek[r];
  }
  StarProduct out;
  out.order = N;
  out.m.resize(N + 1);
  for (int r = 0; r <= N; ++r) out.m[r] = OpM(dim, 2);
  for (int p = 0; p <= N; ++p) {
    if (D[p].is_zero()) continue;
    OpM Dp = to_meas(D[p]);
    for (int q = 0; p + q <= N; ++q) {
      if (s.m[q].is_zero()) continue;
      OpM base = compose_at(Dp, 0, s.m[q]);
      for (int a = 0; p + q + a <= N; ++a) {
        if (Dinv[a].is_zero()) continue;
        OpM withb = compose_at(base, 1, to_meas(Dinv[a]));
        for (int b = 0; p + q + a + b <= N; ++b) {
          if (Dinv[b].is_zero()) continue;
          out.m[p + q + a + b] += compose_at(withb, 0, to_meas(Dinv[b]));
        }
      }
    }
  }
  return out;
}

namespace {

// hbar-series ad_xi applied to a polyvector series (degree-homogeneous)
std::vector<PolyVector> ad_series(const std::vector<PolyVector>& xi,
                                  const std::vector<PolyVector>& a) {
  int N = (int)a.size() - 1;
  std::vector<PolyVector> out(N + 1);
  for (int p = 1; p <= N; ++p)
    for (int q = 0; p + q <= N; ++q)
      if (!xi[p].is_zero() && !a[q].is_zero()) out[p + q] += schouten(xi[p], a[q]);
  return out;
}

std::vector<PolyVector> exp_ad(const std::vector<PolyVector>& xi,
                               const std::vector<PolyVector>& a) {
  int N = (int)a.size() - 1;
  std::vector<PolyVector> acc = a, term = a;
  for (int k = 1; k <= N; ++k) {
    term = ad_series(xi, term);
    Rat c = Rat(1) / factorial(k);
    bool all_zero = true;
    for (int r = 0; r <= N; ++r) {
      if (term[r].is_zero()) continue;
      all_zero = false;
      PolyVector t = term[r];
      t *= c;
      acc[r] += t;
    }
    if (all_zero) break;
  }
  return acc;
}

}  // namespace

UnimodularPoisson gauge_transform_poisson(const UnimodularPoisson& p,
                                          const std::vector<PolyVector>& xi) {
  int N = p.order;
  if ((int)xi.size() < N + 1) throw std::runtime_error("xi series too short");
  for (int r = 1; r <= N; ++r)
    if (!xi[r].is_zero() && xi[r].degree() != 1)
      throw std::runtime_error("xi must be a series of vector fields");
  std::vector<PolyVector> xiv(xi.begin(), xi.begin() + N + 1);
  UnimodularPoisson out(N);
  out.pi = exp_ad(xiv, p.pi);
  out.f = exp_ad(xiv, p.f);
  // u (1 - e^{ad_xi})/ad_xi (dv xi) = -u sum_k ad^k (dv xi)/(k+1)!
  std::vector<PolyVector> dvxi(N + 1);
  for (int r = 1; r <= N; ++r) dvxi[r] = divergence(xi[r]);
  std::vector<PolyVector> term = dvxi;
  for (int k = 0; k <= N; ++k) {
    Rat c = Rat(-1) / factorial(k + 1);
    bool all_zero = true;
    for (int r = 0; r <= N; ++r) {
      if (term[r].is_zero()) continue;
      all_zero = false;
      PolyVector t = term[r];
      t *= c;
      out.f[r] += t;
    }
    if (all_zero) break;
    term = ad_series(xiv, term);
  }
  return out;
}

}  // namespace dq
