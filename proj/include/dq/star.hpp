#pragma once

#include "dq/formality.hpp"

namespace dq {

// Formal unimodular Poisson structure pi = sum_j hbar^j (pi_j + u f_j)
// with pi_j bivectors and f_j functions, subject to
// u dv pi + 1/2 [pi,pi] = 0 and pi_0 + u f_0 = 0.
struct UnimodularPoisson {
  int order = 0;               // hbar truncation
  std::vector<PolyVector> pi;  // size order+1, bivectors, pi[0] zero
  std::vector<PolyVector> f;   // size order+1, functions, f[0] zero

  explicit UnimodularPoisson(int ord = 0) : order(ord), pi(ord + 1), f(ord + 1) {}
  void check_shapes(int dim) const;
};

// Truncated star product: m[0] is the multiplication, m[r] the hbar^r
// bidifferential correction.
struct StarProduct {
  int order = 0;
  std::vector<OpM> m;
};

// Exact verification of u dv pi + 1/2 [pi,pi] = 0 per hbar order, split
// into the u^0 (trivector) and u^1 (vector) components.
Report check_maurer_cartan(const UnimodularPoisson& p);

// f * g = fg + sum_{r>=1} hbar^r m_r(f,g) with
// m_r = sum_j 1/j! sum_{a_1+..+a_j=r, a_i>=1} F_j(rho_{a_1},...,rho_{a_j}),
// rho_a = pi_a + u f_a expanded multilinearly.
StarProduct build_star(const UnimodularPoisson& p, int dim, WeightEngine& eng);

// Per-order residual of sum_{p+q=r} ( m_p(m_q(a,b),c) - m_p(a,m_q(b,c)) ).
Report check_associativity(const StarProduct& s, double tol_sigmas = 3.0,
                           double sigma_ceiling = 0.02);

// Closedness: sigma-invariance of a_0 m_r(a_1,a_2) per hbar order.
Report check_closed(const StarProduct& s, double tol_sigmas = 3.0, double sigma_ceiling = 0.02);

// The 1-ary identity operator.
OpQ identity_op(int dim);

// Gauge transformation of a star product by D = id + sum_{r>=1} hbar^r D_r
// (1-ary exact operators, gauge[r] = D_r, gauge[0] ignored):
//   (f, g) -> D( D^{-1} f * D^{-1} g )
// with D^{-1} the truncated Neumann series.
StarProduct gauge_transform_star(const StarProduct& s, const std::vector<OpQ>& gauge);

// Gauge transformation of a formal unimodular Poisson structure by the
// vector field series xi (xi[0] ignored):
//   pi' = e^{ad_xi} pi + u (1 - e^{ad_xi})/ad_xi (dv xi).
UnimodularPoisson gauge_transform_poisson(const UnimodularPoisson& p,
                                          const std::vector<PolyVector>& xi);

}  // namespace dq
