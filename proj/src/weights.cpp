#include "dq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dq {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

unsigned long long splitmix64(unsigned long long x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_double(unsigned long long x) { return (double)(x >> 11) * 0x1.0p-53; }

// Kronecker sequence directions from the generalized golden ratio
// (the real root of x^{D+1} = x + 1).
std::vector<double> kronecker_alpha(int D) {
  double g = 1.5;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (D + 1));
  std::vector<double> a(D);
  double p = 1.0;
  for (int d = 0; d < D; ++d) {
    p /= g;
    a[d] = p - std::floor(p);
  }
  return a;
}

}  // namespace

WeightCache::WeightCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // split on ';'
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
      size_t semi = line.find(';', pos);
      std::string p = line.substr(pos, semi == std::string::npos ? semi : semi - pos);
      size_t b = p.find_first_not_of(" \t");
      size_t e = p.find_last_not_of(" \t");
      parts.push_back(b == std::string::npos ? "" : p.substr(b, e - b + 1));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    if (parts.size() != 6) throw std::runtime_error("malformed cache line: " + line);
    Weight w;
    w.value = std::stod(parts[2]);
    w.err = std::stod(parts[3]);
    w.samples = std::stol(parts[4]);
    w.seed = std::stoull(parts[5]);
    entries_[parts[0] + " ; " + parts[1]] = w;
  }
}

std::string WeightCache::key(const ExtGraph& g, const std::vector<int>& upows) {
  std::ostringstream os;
  os << g.canon() << " ; upows=";
  for (size_t i = 0; i < upows.size(); ++i) os << (i ? "," : "") << upows[i];
  return os.str();
}

std::optional<Weight> WeightCache::lookup(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void WeightCache::store(const std::string& key, const Weight& w) {
  if (entries_.count(key)) return;
  entries_[key] = w;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot write weight cache: " + path_);
  out.precision(17);
  out << key << " ; " << w.value << " ; " << w.err << " ; " << w.samples << " ; " << w.seed
      << "\n";
}

Weight integrate_weight(const ExtGraph& g, const std::vector<int>& upows,
                        const WeightParams& params) {
  g.check();
  if ((int)upows.size() != g.m) throw std::runtime_error("need one u-power per type I vertex");
  for (int j : upows)
    if (j < 0) throw std::runtime_error("negative u-power");
  if (g.m < 1) throw std::runtime_error("integrate_weight needs an interior vertex");

  ConfigChart chart{g.m, g.n, params.base};
  int D = chart.dim();
  int jtot = 0;
  for (int j : upows) jtot += j;
  int rows = g.edge_count() + 2 * jtot;
  if (rows != D) return Weight{0.0, 0.0, 0, params.seed};  // degree mismatch: exact zero

  double orient = kOrientationCalibration * orientation_sign(chart);

  if (D == 0) return Weight{orient, 0.0, 0, params.seed};

  // the form factors, in the wedge order of the weight form:
  // varpi^{j_i} blocks first (even, order among them immaterial), then the
  // edge 1-forms grouped by source vertex in star order
  struct Factor {
    enum Kind { kVarpi, kEta, kEdge } kind;
    int src;   // interior anchor (0-based)
    PtRef tgt;  // edge target (kEdge)
  };
  std::vector<Factor> factors;
  for (int i = 1; i <= g.m; ++i)
    for (int c = 0; c < upows[i - 1]; ++c) factors.push_back({Factor::kVarpi, i - 1, {}});
  for (int i = 1; i <= g.m; ++i)
    for (const auto& t : g.stars[i - 1]) {
      if (t.boundary && t.v == 0) return Weight{0.0, 0.0, 0, params.seed};  // alpha(i,0) = 0
      if (!t.boundary && t.v == i) {
        if (g.n == 0) return Weight{0.0, 0.0, 0, params.seed};  // eta = 0 for n = 0
        factors.push_back({Factor::kEta, i - 1, {}});
      } else {
        factors.push_back({Factor::kEdge, i - 1, t.boundary ? PtRef{true, t.v} : PtRef{false, t.v - 1}});
      }
    }

  long N = params.samples;
  int B = params.batches;
  if (N < B) throw std::runtime_error("need at least one sample per batch");
  long Nb = N / B;
  int Ds = D;  // sampling dimension equals chart dimension
  std::vector<double> alpha = kronecker_alpha(Ds);

  // scratch
  ChartPoint pt;
  pt.z.resize(g.m);
  pt.z[0] = params.base;
  pt.phi.resize(g.n + 1);
  pt.zb.resize(g.n + 1);
  pt.phi[0] = 0.0;
  pt.zb[0] = 1.0;
  Eigen::MatrixXd M(D, D);
  std::vector<std::vector<std::pair<Cov, Cov>>> vp(g.m);
  std::vector<double> u(Ds), ang;

  long bad = 0;
  const long bad_limit = std::max<long>(1, N / 1000);

  auto density = [&]() -> double {
    for (int i = 0; i < g.m; ++i)
      if (upows[i] > 0) vp[i] = varpi(chart, pt, i);
    // fixed rows: etas and edges; varpi blocks are expanded recursively
    int row = 2 * jtot;
    for (const auto& f : factors) {
      if (f.kind == Factor::kVarpi) continue;
      if (f.kind == Factor::kEta)
        M.row(row++) = eta(chart, pt, f.src);
      else
        M.row(row++) = dtheta(chart, pt, f.src, f.tgt, PtRef{true, 0});
    }
    // choose one decomposable summand per varpi copy
    double total = 0.0;
    std::function<void(int, int)> rec = [&](int fi, int row2) {
      while (fi < (int)factors.size() && factors[fi].kind != Factor::kVarpi) ++fi;
      if (fi == (int)factors.size()) {
        total += M.determinant();
        return;
      }
      const auto& opts = vp[factors[fi].src];
      for (const auto& [A, Bv] : opts) {
        M.row(row2) = A;
        M.row(row2 + 1) = Bv;
        rec(fi + 1, row2 + 2);
      }
    };
    rec(0, 0);
    return total;
  };

  auto map_point = [&](const std::vector<double>& uu) {
    int d = 0;
    for (int k = 1; k < g.m; ++k) {
      double r = std::sqrt(uu[d]);
      double t = 2 * kPi * uu[d + 1];
      pt.z[k] = std::complex<double>(r * std::cos(t), r * std::sin(t));
      d += 2;
    }
    ang.assign(uu.begin() + d, uu.end());
    std::sort(ang.begin(), ang.end());
    for (int j = 1; j <= g.n; ++j) {
      pt.phi[j] = ang[j - 1];
      pt.zb[j] = std::exp(std::complex<double>(0, 2 * kPi * pt.phi[j]));
    }
  };

  // one factorial and pi power turn the sampling mean into the integral
  double volfac = 1.0;
  for (int k = 1; k < g.m; ++k) volfac *= kPi;
  for (int j = 2; j <= g.n; ++j) volfac /= j;

  double sum_means = 0.0, sum_means2 = 0.0;
  for (int b = 0; b < B; ++b) {
    unsigned long long s0 = splitmix64(params.seed ^ (0xB5ull << 56) ^ (unsigned long long)b);
    std::vector<double> shift(Ds);
    for (int d = 0; d < Ds; ++d) shift[d] = unit_double(s0 = splitmix64(s0));
    double acc = 0.0;
    for (long i = 0; i < Nb; ++i) {
      for (int d = 0; d < Ds; ++d) {
        double v = shift[d] + (double)(i + 1) * alpha[d];
        u[d] = v - std::floor(v);
      }
      map_point(u);
      double f = density();
      unsigned long long salt = s0 ^ (unsigned long long)i;
      while (!std::isfinite(f)) {
        if (++bad > bad_limit)
          throw std::runtime_error("weight integration unstable: too many non-finite samples");
        for (int d = 0; d < Ds; ++d) u[d] = unit_double(salt = splitmix64(salt));
        map_point(u);
        f = density();
      }
      acc += f;
    }
    double mean = acc / (double)Nb * volfac;
    sum_means += mean;
    sum_means2 += mean * mean;
  }
  double mean = sum_means / B;
  double var = (sum_means2 / B - mean * mean) / std::max(1, B - 1);
  Weight w;
  w.value = orient * mean;
  w.err = std::sqrt(std::max(0.0, var));
  w.samples = Nb * B;
  w.seed = params.seed;
  return w;
}

Weight WeightEngine::weight(const ExtGraph& g, const std::vector<int>& upows) {
  g.check();
  if ((int)upows.size() != g.m) throw std::runtime_error("need one u-power per type I vertex");

  // graphs without interior vertices: the configuration space has
  // dimension n-2 and the weight form is empty
  if (g.m == 0) return Weight{g.n == 2 ? 1.0 : 0.0, 0.0, 0, params_.seed};

  // structural zeros
  int jtot = 0;
  for (int j : upows) jtot += j;
  if (g.has_edge_to_marked() || g.edge_count() + 2 * jtot != 2 * g.m + g.n - 2 ||
      (g.n == 0 && !g.tadpole_vertices().empty()))
    return Weight{0.0, 0.0, 0, params_.seed};

  // sorted-star representative; the reordering sign multiplies the weight
  ExtGraph rep = g;
  int sign = 1;
  for (auto& star : rep.stars) {
    std::vector<int> order(star.size());
    for (size_t a = 0; a < star.size(); ++a) order[a] = (int)a;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return star[a] < star[b]; });
    // parity of the sorting permutation
    std::vector<bool> seen(order.size(), false);
    for (size_t a = 0; a < order.size(); ++a) {
      if (seen[a]) continue;
      int len = 0;
      for (int b = (int)a; !seen[b]; b = order[b]) {
        seen[b] = true;
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
    std::sort(star.begin(), star.end());
  }

  std::string key = WeightCache::key(rep, upows);
  if (cache_) {
    if (auto hit = cache_->lookup(key)) {
      Weight w = *hit;
      w.value *= sign;
      return w;
    }
  }
  Weight w = integrate_weight(rep, upows, params_);
  if (cache_) cache_->store(key, w);
  w.value *= sign;
  return w;
}

}  // namespace dq
