#include "dq/formality.hpp"

#include <json.hpp>
#include <map>
#include <sstream>

namespace dq {

namespace {

// absolute floor below which an exactly-cancelling coefficient may sit due
// to double rounding
constexpr double kExactFloor = 1e-9;

int degree_sum_parity(const std::vector<int>& parities, unsigned mask) {
  int s = 0;
  for (size_t i = 0; i < parities.size(); ++i)
    if (mask & (1u << i)) s += parities[i];
  return s & 1;
}

}  // namespace

int shuffle_sign(const std::vector<int>& parities, const std::vector<int>& order) {
  int sign = 1;
  for (size_t a = 0; a < order.size(); ++a)
    for (size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b] && (parities[order[a]] & 1) && (parities[order[b]] & 1))
        sign = -sign;
  return sign;
}

void Report::add(std::string label, const Meas& residual) {
  ReportRow r;
  r.label = std::move(label);
  r.value = residual.v;
  r.sigma = residual.sigma();
  r.pass = std::fabs(r.value) <= std::max(tol_sigmas * r.sigma, kExactFloor);
  rows.push_back(std::move(r));
}

void Report::finish() {
  passed = true;
  max_sigma = 0.0;
  for (const auto& r : rows) {
    passed = passed && r.pass;
    max_sigma = std::max(max_sigma, r.sigma);
  }
  if (max_sigma > sigma_ceiling) passed = false;
}

std::string Report::text() const {
  std::ostringstream os;
  os << title << "\n";
  for (const auto& r : rows) {
    os << "  " << (r.pass ? "ok  " : "FAIL") << "  " << r.label << "  residual=" << r.value
       << "  sigma=" << r.sigma << "\n";
  }
  os << "  max sigma " << max_sigma << " (ceiling " << sigma_ceiling << "), tolerance "
     << tol_sigmas << " sigma\n";
  os << (passed ? "PASS" : "FAIL") << ": " << title << "\n";
  return os.str();
}

std::string Report::json() const {
  nlohmann::json j;
  j["title"] = title;
  j["passed"] = passed;
  j["tol_sigmas"] = tol_sigmas;
  j["sigma_ceiling"] = sigma_ceiling;
  j["max_sigma"] = max_sigma;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"label", r.label}, {"value", r.value}, {"sigma", r.sigma}, {"pass", r.pass}});
  return j.dump(2);
}

std::string opkey_label(const OpKey& k) {
  std::ostringstream os;
  auto mi = [&](const MultiIndex& e) {
    os << "(";
    for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ")";
  };
  os << "x^";
  mi(k.coef);
  for (const auto& d : k.derivs) {
    os << " ";
    mi(d);
  }
  return os.str();
}

OpM taylor_coefficient(const std::vector<UInput>& xs, WeightEngine& eng) {
  int m = (int)xs.size();
  if (m == 0) throw std::runtime_error("taylor_coefficient: no inputs");
  int d = 0;
  for (const auto& x : xs) {
    if (x.gamma.is_zero()) return OpM();
    if (x.upow < 0) throw std::runtime_error("negative u-power");
    d = x.gamma.dim();
  }
  int n = 2 - 2 * m;
  std::vector<int> degs(m), upows(m);
  for (int i = 0; i < m; ++i) {
    degs[i] = xs[i].gamma.degree();
    upows[i] = xs[i].upow;
    n += degs[i] + 2 * xs[i].upow;
  }
  if (n < 0) return OpM();
  std::vector<PolyVector> gammas(m);
  for (int i = 0; i < m; ++i) gammas[i] = xs[i].gamma;

  // Sum over graphs with sorted stars only; the remaining orderings repeat
  // the same (weight x operator) term, giving a factor prod k_i!.
  Rat factor = 1;
  for (int k : degs) factor *= factorial(k);

  OpM acc(d, n + 1);
  for (const auto& g : enumerate_graphs(m, n, degs, true)) {
    bool sorted = true;
    for (const auto& s : g.stars)
      if (!std::is_sorted(s.begin(), s.end())) {
        sorted = false;
        break;
      }
    if (!sorted) continue;
    OpQ D = evaluate_as_op(g, gammas);
    if (D.is_zero()) continue;
    Meas w = eng.meas(g, upows);
    if (ScalarOps<Meas>::is_zero(w)) continue;
    acc += meas_scale(factor * D, w);
  }
  return acc;
}

OpM taylor_as_op(const std::vector<UInput>& xs, WeightEngine& eng) {
  OpM rep = taylor_coefficient(xs, eng);
  if (rep.is_zero()) return OpM();
  return iota_inverse(ibp_normalize(rep));
}

namespace {

std::string inputs_key(const std::vector<UInput>& xs) {
  std::ostringstream os;
  for (const auto& x : xs) os << "u^" << x.upow << " [" << to_string(x.gamma) << "] ";
  return os.str();
}

// memoized taylor_as_op within one check
class TaylorMemo {
 public:
  explicit TaylorMemo(WeightEngine& eng) : eng_(eng) {}
  const OpM& get(const std::vector<UInput>& xs) {
    auto key = inputs_key(xs);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(key, taylor_as_op(xs, eng_)).first->second;
  }

 private:
  WeightEngine& eng_;
  std::map<std::string, OpM> memo_;
};

}  // namespace

Report check_linfty(const std::vector<UInput>& xs, WeightEngine& eng, double tol_sigmas,
                    double sigma_ceiling) {
  int n = (int)xs.size();
  if (n == 0) throw std::runtime_error("check_linfty: no inputs");
  int d = xs[0].gamma.dim();
  Report rep;
  rep.tol_sigmas = tol_sigmas;
  rep.sigma_ceiling = sigma_ceiling;
  rep.title = "L-infinity relation at " + inputs_key(xs);
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = xs[i].gamma.degree() & 1;
  TaylorMemo memo(eng);

  OpM acc;
  // differential side: sum_i (-1)^{k_1+..+k_{i-1}} F_n(..., u dv' x_i, ...)
  // dv' inserts the contracted index at every slot of the k-vector, so on
  // antisymmetric input it is (-1)^{k+1} k times the plain divergence; this
  // is the normalization under which the relation closes against the
  // graph-weight boundary strata (checked for k = 1, 2, 3)
  int prefix = 0;
  for (int i = 0; i < n; ++i) {
    PolyVector dv = divergence(xs[i].gamma);
    if (!dv.is_zero()) {
      int k = xs[i].gamma.degree();
      std::vector<UInput> ys = xs;
      ys[i] = UInput{xs[i].upow + 1, dv};
      OpM t = memo.get(ys);
      t *= Rat((k & 1) ? k : -k);
      if (prefix & 1)
        acc -= t;
      else
        acc += t;
    }
    prefix += par[i];
  }
  // bracket side: - sum_{i != j} eps(i,j,rest) F_{n-1}(x_i . x_j, rest)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      PolyVector b = bullet(xs[i].gamma, xs[j].gamma);
      if (b.is_zero()) continue;
      std::vector<UInput> ys;
      ys.push_back(UInput{xs[i].upow + xs[j].upow, b});
      std::vector<int> order = {i, j};
      for (int r = 0; r < n; ++r)
        if (r != i && r != j) {
          ys.push_back(xs[r]);
          order.push_back(r);
        }
      int eps = shuffle_sign(par, order);
      OpM t = memo.get(ys);
      if (eps > 0)
        acc -= t;
      else
        acc += t;
    }
  // composition side: - sum_{I u J = [n]} eps(I,J) (-1)^{|k_I|} F_I{F_J}
  OpM mult = to_meas(OpQ::mult(d));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<UInput> xi, xj;
    std::vector<int> order;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        xi.push_back(xs[i]);
        order.push_back(i);
      }
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) {
        xj.push_back(xs[i]);
        order.push_back(i);
      }
    const OpM& fi = xi.empty() ? mult : memo.get(xi);
    const OpM& fj = xj.empty() ? mult : memo.get(xj);
    if (fi.is_zero() || fj.is_zero()) continue;
    OpM t = braces(fi, {fj});
    if (t.is_zero()) continue;
    int sgn = shuffle_sign(par, order) * (degree_sum_parity(par, mask) ? -1 : 1);
    if (sgn > 0)
      acc -= t;
    else
      acc += t;
  }

  if (acc.is_zero()) {
    rep.add("all coefficients cancel exactly", Meas(0.0, 0.0));
  } else {
    for (const auto& [k, s] : acc.terms()) rep.add(opkey_label(k), s);
  }
  rep.finish();
  return rep;
}

Report check_weight_relation(const ExtGraph& g, const std::vector<int>& upows, WeightEngine& eng,
                             double tol_sigmas, double sigma_ceiling) {
  g.check();
  int m = g.m, n = g.n;
  Report rep;
  rep.tol_sigmas = tol_sigmas;
  rep.sigma_ceiling = sigma_ceiling;
  {
    std::ostringstream os;
    os << "weight relation for " << g.canon() << " ; " << WeightCache::key(g, upows);
    rep.title = os.str();
  }
  std::vector<int> par(m);
  for (int i = 1; i <= m; ++i) par[i - 1] = g.outdeg(i) & 1;

  Meas lhs(0.0, 0.0), rhs(0.0, 0.0);
  // tadpole removal: - sum_i (-1)^{k_1+..+k_{i-1} + s(i,i)} w(G - (i,i); j_i + 1)
  for (int i : g.tadpole_vertices()) {
    auto [pos, g2] = remove_tadpole(g, i);
    int e = pos;
    for (int r = 1; r < i; ++r) e += g.outdeg(r);
    std::vector<int> up = upows;
    up[i - 1] += 1;
    Meas w = eng.meas(g2, up);
    if (e & 1)
      lhs += w;
    else
      lhs -= w;
  }
  // edge contractions: - sum_{(i,j) in E, (j,i) not in E} (-1)^{s(i,j)} eps(i,j,rest) w(contracted)
  for (int i = 1; i <= m; ++i) {
    const auto& star = g.stars[i - 1];
    for (int pos = 0; pos < (int)star.size(); ++pos) {
      const Target& t = star[pos];
      if (t.boundary || t.v == i) continue;
      int j = t.v;
      if (g.has_edge(j, i)) continue;
      auto g2 = contract_edge(g, i, j);
      if (!g2) continue;
      std::vector<int> up, order = {i - 1, j - 1};
      up.push_back(upows[i - 1] + upows[j - 1]);
      for (int r = 1; r <= m; ++r)
        if (r != i && r != j) {
          up.push_back(upows[r - 1]);
          order.push_back(r - 1);
        }
      int sgn = shuffle_sign(par, order) * (pos & 1 ? -1 : 1);
      Meas w = eng.meas(*g2, up);
      if (sgn > 0)
        rhs -= w;
      else
        rhs += w;
    }
  }
  // boundary collapses: sum (-1)^{(l+1)(n2+1)+n2+n} eps(I,J) w(quotient; j_I) w(sub; j_J)
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    int m2 = __builtin_popcount(mask);
    for (int n2 = 1; n2 <= n; ++n2) {
      if (m2 + n2 < 2) continue;
      for (int l = 1; l + n2 - 1 <= n; ++l) {
        std::vector<int> J, upI, upJ, order;
        for (int r = 0; r < m; ++r)
          if (!(mask & (1u << r))) {
            order.push_back(r);
            upI.push_back(upows[r]);
          }
        for (int r = 0; r < m; ++r)
          if (mask & (1u << r)) {
            J.push_back(r + 1);
            order.push_back(r);
            upJ.push_back(upows[r]);
          }
        auto col = collapse_subgraph(g, J, l, n2);
        if (!col) continue;
        int sgn = shuffle_sign(par, order);
        int nq = n - n2 + 1;
        // the f-terms translate between the descending boundary-block
        // orientation the stratum sign was derived in and the ascending
        // one used by ConfigChart, for parent, quotient and sub factors
        auto f = [](int x) { return x * (x - 1) / 2; };
        if (((l + 1) * (n2 + 1) + n2 + n + f(n) + f(nq) + f(n2)) & 1) sgn = -sgn;
        Meas wq = eng.meas(col->quotient, upI);
        Meas ws = eng.meas(col->sub, upJ);
        Meas w = wq * ws;
        if (sgn > 0)
          rhs += w;
        else
          rhs -= w;
      }
    }
  }
  rep.add("lhs - rhs", lhs - rhs);
  rep.finish();
  return rep;
}

Report check_cyclic_invariance(const std::vector<UInput>& xs, WeightEngine& eng,
                               double tol_sigmas, double sigma_ceiling) {
  Report rep;
  rep.tol_sigmas = tol_sigmas;
  rep.sigma_ceiling = sigma_ceiling;
  rep.title = "cyclic invariance of " + inputs_key(xs);
  OpM r = taylor_coefficient(xs, eng);
  OpM diff = r.is_zero() ? OpM() : ibp_normalize(cyclic_shift(r)).rep - ibp_normalize(r).rep;
  if (diff.is_zero()) {
    rep.add("all coefficients cancel exactly", Meas(0.0, 0.0));
  } else {
    for (const auto& [k, s] : diff.terms()) rep.add(opkey_label(k), s);
  }
  rep.finish();
  return rep;
}

}  // namespace dq
