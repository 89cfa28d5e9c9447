#include "dq/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dq {

int ExtGraph::edge_count() const {
  int e = 0;
  for (const auto& s : stars) e += (int)s.size();
  return e;
}

bool ExtGraph::has_tadpole(int i) const {
  for (const auto& t : stars.at(i - 1))
    if (!t.boundary && t.v == i) return true;
  return false;
}

std::vector<int> ExtGraph::tadpole_vertices() const {
  std::vector<int> r;
  for (int i = 1; i <= m; ++i)
    if (has_tadpole(i)) r.push_back(i);
  return r;
}

bool ExtGraph::has_edge(int i, int j) const {
  for (const auto& t : stars.at(i - 1))
    if (!t.boundary && t.v == j) return true;
  return false;
}

bool ExtGraph::has_edge_to_marked() const {
  for (const auto& s : stars)
    for (const auto& t : s)
      if (t.boundary && t.v == 0) return true;
  return false;
}

int ExtGraph::edge_form_pos(int i, int pos) const {
  int p = 0;
  for (int r = 1; r < i; ++r) p += outdeg(r);
  return p + pos;
}

std::string ExtGraph::canon() const {
  std::ostringstream os;
  os << m << " " << n;
  for (const auto& s : stars) {
    os << " |";
    for (const auto& t : s) os << " " << (t.boundary ? "b" : "i") << t.v;
  }
  return os.str();
}

void ExtGraph::check() const {
  if (m < 0 || n < 0 || (int)stars.size() != m) throw std::runtime_error("malformed graph");
  for (int i = 1; i <= m; ++i) {
    const auto& s = stars[i - 1];
    for (const auto& t : s) {
      if (t.boundary ? (t.v < 0 || t.v > n) : (t.v < 1 || t.v > m))
        throw std::runtime_error("graph target out of range: " + canon());
    }
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::runtime_error("double edge in graph: " + canon());
  }
}

ExtGraph parse_graph(const std::string& s) {
  std::vector<std::string> blocks;
  size_t pos = 0;
  while (true) {
    size_t bar = s.find('|', pos);
    blocks.push_back(s.substr(pos, bar == std::string::npos ? bar : bar - pos));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  ExtGraph g;
  {
    std::istringstream is(blocks.at(0));
    if (!(is >> g.m >> g.n)) throw std::runtime_error("graph header must be 'm n'");
    std::string extra;
    if (is >> extra) throw std::runtime_error("junk in graph header");
  }
  if ((int)blocks.size() != g.m + 1)
    throw std::runtime_error("graph must have exactly m star blocks");
  for (int i = 1; i <= g.m; ++i) {
    std::istringstream is(blocks[i]);
    std::vector<Target> star;
    std::string tok;
    while (is >> tok) {
      if (tok.size() < 2 || (tok[0] != 'i' && tok[0] != 'b'))
        throw std::runtime_error("bad graph target '" + tok + "'");
      Target t;
      t.boundary = tok[0] == 'b';
      t.v = std::stoi(tok.substr(1));
      star.push_back(t);
    }
    g.stars.push_back(std::move(star));
  }
  g.check();
  return g;
}

std::vector<ExtGraph> enumerate_graphs(int m, int n, const std::vector<int>& outdegs,
                                       bool allow_tadpoles) {
  if ((int)outdegs.size() != m) throw std::runtime_error("outdegs must have length m");
  // candidate targets in lexicographic order: i1 < ... < im < b0 < ... < bn
  std::vector<Target> cands;
  for (int v = 1; v <= m; ++v) cands.push_back({false, v});
  for (int v = 0; v <= n; ++v) cands.push_back({true, v});
  std::vector<ExtGraph> out;
  ExtGraph g;
  g.m = m;
  g.n = n;
  g.stars.resize(m);
  std::function<void(int)> vert = [&](int i) {
    if (i > m) {
      out.push_back(g);
      return;
    }
    std::vector<Target>& star = g.stars[i - 1];
    std::function<void()> pick = [&]() {
      if ((int)star.size() == outdegs[i - 1]) {
        vert(i + 1);
        return;
      }
      for (const Target& t : cands) {
        if (!t.boundary && t.v == i && !allow_tadpoles) continue;
        if (std::find(star.begin(), star.end(), t) != star.end()) continue;
        star.push_back(t);
        pick();
        star.pop_back();
      }
    };
    pick();
  };
  vert(1);
  return out;
}

OpQ evaluate_as_op(const ExtGraph& g, const std::vector<PolyVector>& gammas) {
  g.check();
  if ((int)gammas.size() != g.m) throw std::runtime_error("evaluate: need one polyvector per vertex");
  int d = 0;
  for (const auto& gm : gammas)
    if (gm.dim() > 0) d = gm.dim();
  if (d == 0) throw std::runtime_error("evaluate: ambient dimension unknown");
  for (int i = 1; i <= g.m; ++i) {
    if (gammas[i - 1].is_zero()) return OpQ(d, g.n + 1);
    if (gammas[i - 1].degree() != g.outdeg(i))
      throw std::runtime_error("evaluate: polyvector degree must match out-degree");
  }
  OpQ out(d, g.n + 1);
  int E = g.edge_count();
  // edge order: stars concatenated; color each edge by 1..d
  std::vector<std::pair<int, Target>> edges;  // (source, target)
  for (int i = 1; i <= g.m; ++i)
    for (const auto& t : g.stars[i - 1]) edges.emplace_back(i, t);
  std::vector<int> col(E, 1);
  while (true) {
    // vertex factors
    Polynomial coeff = Polynomial::constant(d, 1);
    bool zero = false;
    for (int i = 1; i <= g.m && !zero; ++i) {
      std::vector<int> up;
      int off = g.edge_form_pos(i, 0);
      for (int p = 0; p < g.outdeg(i); ++p) up.push_back(col[off + p]);
      Polynomial f = gammas[i - 1].tensor(up);
      if (f.is_zero()) {
        zero = true;
        break;
      }
      // in-edges at vertex i differentiate the component
      for (int e = 0; e < E; ++e)
        if (!edges[e].second.boundary && edges[e].second.v == i) f = f.partial(col[e]);
      if (f.is_zero()) {
        zero = true;
        break;
      }
      coeff = coeff * f;
      if (coeff.is_zero()) zero = true;
    }
    if (!zero) {
      std::vector<MultiIndex> derivs(g.n + 1, mi_zero(d));
      for (int e = 0; e < E; ++e)
        if (edges[e].second.boundary) derivs[edges[e].second.v][col[e] - 1] += 1;
      out.add_poly_term(coeff, derivs, Rat(1));
    }
    // next coloring
    int e = 0;
    while (e < E && col[e] == d) col[e++] = 1;
    if (e == E) break;
    col[e] += 1;
  }
  return out;
}

Polynomial evaluate(const ExtGraph& g, const std::vector<PolyVector>& gammas,
                    const std::vector<Polynomial>& args) {
  if (g.m == 0) {
    // no vertices to read a dimension from; an edgeless graph is plain
    // multiplication of the boundary arguments
    g.check();
    if ((int)args.size() != g.n + 1) throw std::runtime_error("evaluate: need n+1 arguments");
    Polynomial r = args[0];
    for (size_t j = 1; j < args.size(); ++j) r = r * args[j];
    return r;
  }
  return dq::apply(evaluate_as_op(g, gammas), args);
}

ExtGraph sigma_graph(const ExtGraph& g) {
  ExtGraph r = g;
  for (auto& s : r.stars)
    for (auto& t : s)
      if (t.boundary) t.v = (t.v + 1) % (g.n + 1);
  return r;
}

std::pair<int, ExtGraph> remove_tadpole(const ExtGraph& g, int i) {
  ExtGraph r = g;
  auto& s = r.stars.at(i - 1);
  auto it = std::find(s.begin(), s.end(), Target{false, i});
  if (it == s.end()) throw std::runtime_error("no tadpole at vertex");
  int pos = (int)(it - s.begin());
  s.erase(it);
  return {pos, r};
}

ExtGraph add_tadpole(const ExtGraph& g, int i, int pos) {
  ExtGraph r = g;
  auto& s = r.stars.at(i - 1);
  if (pos < 0 || pos > (int)s.size()) throw std::runtime_error("bad tadpole position");
  s.insert(s.begin() + pos, Target{false, i});
  r.check();
  return r;
}

std::vector<ExtGraph> tadpole_variants(const ExtGraph& g, int i) {
  std::vector<ExtGraph> out;
  if (g.has_tadpole(i)) return out;
  for (int pos = 0; pos <= g.outdeg(i); ++pos) out.push_back(add_tadpole(g, i, pos));
  return out;
}

namespace {

// Remaps a type I target under a vertex renumbering (0 means "merged
// vertex 1").
struct VertMap {
  std::vector<int> to;  // 1-based old -> new; 1 for merged vertices
  Target operator()(const Target& t) const {
    if (t.boundary) return t;
    return Target{false, to.at(t.v)};
  }
};

bool push_checked(std::vector<Target>& star, const Target& t) {
  if (std::find(star.begin(), star.end(), t) != star.end()) return false;
  star.push_back(t);
  return true;
}

}  // namespace

std::optional<ExtGraph> contract_edge(const ExtGraph& g, int i, int j) {
  if (i == j || i < 1 || j < 1 || i > g.m || j > g.m) throw std::runtime_error("contract_edge: bad pair");
  VertMap vm;
  vm.to.assign(g.m + 1, 0);
  vm.to[i] = 1;
  vm.to[j] = 1;
  int next = 2;
  for (int v = 1; v <= g.m; ++v)
    if (v != i && v != j) vm.to[v] = next++;
  ExtGraph r;
  r.m = g.m - 1;
  r.n = g.n;
  r.stars.resize(r.m);
  // merged star: Star(i) minus the edge (i,j), then Star(j)
  bool dropped = false;
  for (const auto& t : g.stars[i - 1]) {
    if (!t.boundary && t.v == j && !dropped) {
      dropped = true;
      continue;
    }
    if (!push_checked(r.stars[0], vm(t))) return std::nullopt;
  }
  if (!dropped) throw std::runtime_error("contract_edge: edge not present");
  for (const auto& t : g.stars[j - 1]) {
    if (!push_checked(r.stars[0], vm(t))) return std::nullopt;
  }
  for (int v = 1; v <= g.m; ++v) {
    if (v == i || v == j) continue;
    for (const auto& t : g.stars[v - 1])
      if (!push_checked(r.stars[vm.to[v] - 1], vm(t))) return std::nullopt;
  }
  r.check();
  return r;
}

std::optional<Collapse> collapse_subgraph(const ExtGraph& g, const std::vector<int>& J, int l,
                                          int n2) {
  int m2 = (int)J.size();
  if (n2 < 0 || (n2 > 0 && (l < 1 || l + n2 - 1 > g.n))) throw std::runtime_error("bad boundary block");
  if (m2 + n2 < 2) throw std::runtime_error("cluster must contain at least two points");
  std::vector<bool> inJ(g.m + 1, false);
  for (int v : J) {
    if (v < 1 || v > g.m || inJ[v]) throw std::runtime_error("bad type I subset");
    inJ[v] = true;
  }
  auto in_block = [&](const Target& t) {
    return t.boundary ? (n2 > 0 && t.v >= l && t.v <= l + n2 - 1) : inJ[t.v];
  };

  // subgraph: cluster vertices renumbered in order; boundary block -> 1..n2
  // after a fresh, edgeless boundary vertex 0
  ExtGraph sub;
  sub.m = m2;
  sub.n = n2;
  sub.stars.resize(m2);
  std::vector<int> sub_idx(g.m + 1, 0);
  {
    int next = 1;
    for (int v = 1; v <= g.m; ++v)
      if (inJ[v]) sub_idx[v] = next++;
  }

  ExtGraph quot;
  quot.n = n2 > 0 ? g.n - n2 + 1 : g.n;
  quot.m = n2 > 0 ? g.m - m2 : g.m - m2 + 1;
  quot.stars.resize(quot.m);
  std::vector<int> quot_idx(g.m + 1, 0);
  {
    // for interior collapse (n2 = 0) the merged vertex is 1
    int next = n2 > 0 ? 1 : 2;
    for (int v = 1; v <= g.m; ++v) {
      if (inJ[v])
        quot_idx[v] = n2 > 0 ? 0 : 1;
      else
        quot_idx[v] = next++;
    }
  }
  auto quot_target = [&](const Target& t) -> Target {
    if (in_block(t)) {
      // the cluster collapses onto boundary vertex l (n2 > 0) or onto the
      // merged interior vertex 1 (n2 = 0)
      return n2 > 0 ? Target{true, l} : Target{false, 1};
    }
    if (t.boundary) return Target{true, t.v > l + n2 - 1 && n2 > 0 ? t.v - n2 + 1 : t.v};
    return Target{false, quot_idx[t.v]};
  };

  for (int v = 1; v <= g.m; ++v) {
    for (const auto& t : g.stars[v - 1]) {
      if (inJ[v]) {
        if (in_block(t)) {
          Target st = t.boundary ? Target{true, t.v - l + 1} : Target{false, sub_idx[t.v]};
          if (!push_checked(sub.stars[sub_idx[v] - 1], st)) return std::nullopt;
        } else if (n2 > 0) {
          // an edge exits a boundary cluster: the stratum form vanishes
          return std::nullopt;
        } else {
          // interior collapse keeps exiting edges on the merged vertex
          if (!push_checked(quot.stars[0], quot_target(t))) return std::nullopt;
        }
      } else {
        if (!push_checked(quot.stars[quot_idx[v] - 1], quot_target(t))) return std::nullopt;
      }
    }
  }
  sub.check();
  quot.check();
  return Collapse{std::move(quot), std::move(sub)};
}

}  // namespace dq
