// dqw: desk quantization workbench.
//
// Subcommands: graphs enumerate | weight compute | weight relations |
// linfty check | cyclic check | star build | star assoc | star closed |
// algebra selftest.
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad usage/unknown
// subcommand, 3 I/O error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "dq/formality.hpp"
#include "dq/star.hpp"
#include "dq/text.hpp"

using namespace dq;

namespace {

struct RunConfig {
  int dim = 2;
  int order = 2;
  long samples = 2000000;
  unsigned long long seed = 0xC0FFEE;
  double tol_sigmas = 3.0;
  double sigma_ceiling = 0.02;
  std::string cache_path;
  std::string json_path;
  std::string graph_text;
  std::vector<std::string> gammas;
  std::vector<int> upows;
  std::string poisson_text;
  int m = 1, n = 1;
  std::string outdegs = "1";
  bool tadpoles = true;
};

WeightEngine make_engine(const RunConfig& c, WeightCache* cache) {
  WeightParams p;
  p.samples = c.samples;
  p.seed = c.seed;
  return WeightEngine(p, cache);
}

void write_json(const RunConfig& c, const std::string& payload) {
  if (c.json_path.empty()) return;
  std::ofstream f(c.json_path);
  if (!f) throw std::ios_base::failure("cannot open " + c.json_path);
  f << payload << "\n";
  if (!f) throw std::ios_base::failure("write failed: " + c.json_path);
}

int emit(const RunConfig& c, const Report& r) {
  std::cout << r.text();
  write_json(c, r.json());
  return r.passed ? 0 : 1;
}

// Poisson text: terms like "hbar x3 d1^d2", "hbar^2 u x1", joined by +/-.
// hbar^j picks the order, a "u" factor routes the term to the function
// part, the remainder is polyvector/polynomial syntax.
UnimodularPoisson parse_poisson(const std::string& s, int dim, int order) {
  UnimodularPoisson p(order);
  size_t i = 0;
  auto skip = [&] { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; };
  skip();
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (!first) {
      throw std::runtime_error("expected '+' or '-' between poisson terms");
    }
    first = false;
    skip();
    size_t start = i;
    int depth = 0;
    while (i < s.size()) {
      char ch = s[i];
      if (ch == '(') ++depth;
      else if (ch == ')') --depth;
      else if (depth == 0 && (ch == '+' || ch == '-')) break;
      ++i;
    }
    std::string term = s.substr(start, i - start);
    int hpow = 0;
    bool has_u = false;
    std::string rest;
    std::istringstream ts(term);
    std::string tok;
    bool body = false;
    while (ts >> tok) {
      if (!body && tok == "hbar") { hpow = 1; continue; }
      if (!body && tok.rfind("hbar^", 0) == 0) { hpow = std::stoi(tok.substr(5)); continue; }
      if (!body && tok == "u") { has_u = true; continue; }
      body = true;
      if (!rest.empty()) rest += " ";
      rest += tok;
    }
    if (hpow < 1 || hpow > order)
      throw std::runtime_error("poisson term needs hbar^j with 1 <= j <= order");
    if (rest.empty()) rest = "1";
    PolyVector v = parse_polyvector(rest, dim);
    if (sign < 0) v *= Rat(-1);
    if (has_u) {
      if (v.degree() != 0) throw std::runtime_error("u-terms must be functions");
      p.f[hpow] += v;
    } else {
      if (v.degree() != 2) throw std::runtime_error("non-u terms must be bivectors");
      p.pi[hpow] += v;
    }
    skip();
  }
  return p;
}

std::vector<UInput> parse_inputs(const RunConfig& c) {
  std::vector<UInput> xs;
  for (size_t i = 0; i < c.gammas.size(); ++i) {
    int up = i < c.upows.size() ? c.upows[i] : 0;
    xs.push_back(UInput{up, parse_polyvector(c.gammas[i], c.dim)});
  }
  return xs;
}

int cmd_graphs_enumerate(const RunConfig& c) {
  std::vector<int> degs;
  std::istringstream ss(c.outdegs);
  for (std::string tok; std::getline(ss, tok, ',');) degs.push_back(std::stoi(tok));
  auto gs = enumerate_graphs(c.m, c.n, degs, c.tadpoles);
  nlohmann::json j;
  j["count"] = gs.size();
  j["graphs"] = nlohmann::json::array();
  for (const auto& g : gs) {
    std::cout << g.canon() << "\n";
    j["graphs"].push_back(g.canon());
  }
  std::cout << gs.size() << " graphs\n";
  write_json(c, j.dump(2));
  return 0;
}

int cmd_weight_compute(const RunConfig& c, WeightEngine& eng) {
  ExtGraph g = parse_graph(c.graph_text);
  std::vector<int> up = c.upows;
  up.resize(g.m, 0);
  Weight w = eng.weight(g, up);
  std::ostringstream line;
  line << "w[" << g.canon() << "] = " << w.value << " +- " << w.err << "  (samples " << w.samples
       << ", seed " << w.seed << ")";
  std::cout << line.str() << "\n";
  nlohmann::json j;
  j["graph"] = g.canon();
  j["upows"] = up;
  j["value"] = w.value;
  j["sigma"] = w.err;
  j["samples"] = w.samples;
  j["seed"] = w.seed;
  write_json(c, j.dump(2));
  return 0;
}

int cmd_algebra_selftest(const RunConfig& c) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> ar(1, 2), dg(1, 3);
  auto rand_op = [&](int arity) {
    OpQ op(2, arity);
    std::uniform_int_distribution<int> num(-3, 3), pick(0, 1), tot(0, 1);
    for (int t = 0; t < 2; ++t) {
      OpKey k;
      k.coef = mi_zero(2);
      for (int q = 0; q < tot(rng) + 1; ++q) k.coef[pick(rng)] += 1;
      for (int j = 0; j < arity; ++j) {
        MultiIndex e = mi_zero(2);
        for (int q = 0; q < tot(rng); ++q) e[pick(rng)] += 1;
        k.derivs.push_back(e);
      }
      op.add_term(k, Rat(num(rng)));
    }
    return op;
  };
  auto rand_pv = [&](int degree) {
    PolyVector v(3, degree);
    std::uniform_int_distribution<int> num(-3, 3), pick(1, 3);
    for (int t = 0; t < 2; ++t) {
      std::vector<int> idx(degree);
      for (auto& x : idx) x = pick(rng);
      Polynomial pc(3);
      MultiIndex e = mi_zero(3);
      e[pick(rng) - 1] += 1;
      pc.add_term(e, Rat(num(rng)));
      v += PolyVector::term(3, idx, pc);
    }
    return v;
  };
  Report r;
  r.title = "exact algebra selftest";
  bool ok = true;
  for (int t = 0; t < 100 && ok; ++t) {
    OpQ a = rand_op(ar(rng)), b = rand_op(ar(rng)), cc = rand_op(ar(rng));
    if (!hochschild_diff(hochschild_diff(a)).is_zero()) ok = false;
    if (!(cup(cup(a, b), cc) == cup(a, cup(b, cc)))) ok = false;
    PolyVector x = rand_pv(dg(rng)), y = rand_pv(dg(rng));
    PolyVector lhs = schouten(x, y), rhs = schouten(y, x);
    if (((x.degree() - 1) * (y.degree() - 1)) % 2 != 0) rhs = -rhs;
    if (!(lhs + rhs).is_zero()) ok = false;
    if (!divergence_derivation_defect(x, y).is_zero()) ok = false;
    if (!divergence(divergence(rand_pv(3))).is_zero()) ok = false;
  }
  r.add("exact identity batch", Meas(ok ? 0.0 : 1.0, 0.0));
  r.finish();
  return emit(c, r);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"desk quantization workbench"};
  app.set_config("--config", "", "config file with 'key = value' lines");
  app.allow_config_extras(true);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--dim", cfg.dim, "ambient dimension");
  app.add_option("--order", cfg.order, "hbar truncation order");
  app.add_option("--samples", cfg.samples, "samples per weight integral");
  app.add_option("--seed", cfg.seed, "base RNG seed");
  app.add_option("--tol-sigmas", cfg.tol_sigmas, "pass threshold in sigmas");
  app.add_option("--sigma-ceiling", cfg.sigma_ceiling, "max usable sigma per row");
  app.add_option("--cache", cfg.cache_path, "weight cache file")->envname("DQW_CACHE");
  app.add_option("--json", cfg.json_path, "also write the report as JSON");

  auto* graphs = app.add_subcommand("graphs", "graph utilities");
  auto* genum = graphs->add_subcommand("enumerate", "list extended graphs");
  genum->add_option("--m", cfg.m, "interior vertices")->required();
  genum->add_option("--n", cfg.n, "boundary vertices minus one")->required();
  genum->add_option("--outdegs", cfg.outdegs, "comma separated out-degrees")->required();
  genum->add_flag("--tadpoles,!--no-tadpoles", cfg.tadpoles, "allow tadpole edges");

  auto* weight = app.add_subcommand("weight", "graph weights");
  auto* wcomp = weight->add_subcommand("compute", "integrate one weight");
  wcomp->add_option("--graph", cfg.graph_text, "graph text, e.g. \"1 1 | b1\"")->required();
  wcomp->add_option("--upows", cfg.upows, "u-powers per vertex");
  auto* wrel = weight->add_subcommand("relations", "check the Stokes relation for one graph");
  wrel->add_option("--graph", cfg.graph_text, "graph text")->required();
  wrel->add_option("--upows", cfg.upows, "u-powers per vertex");

  auto* linfty = app.add_subcommand("linfty", "morphism relation");
  auto* lcheck = linfty->add_subcommand("check", "check the relation on given inputs");
  lcheck->add_option("--gamma", cfg.gammas, "polyvector inputs (repeatable)")->required();
  lcheck->add_option("--upows", cfg.upows, "u-power per input");

  auto* cyc = app.add_subcommand("cyclic", "cyclic invariance");
  auto* ccheck = cyc->add_subcommand("check", "sigma-invariance of the Taylor coefficient");
  ccheck->add_option("--gamma", cfg.gammas, "polyvector inputs (repeatable)")->required();
  ccheck->add_option("--upows", cfg.upows, "u-power per input");

  auto* star = app.add_subcommand("star", "star products");
  auto* sbuild = star->add_subcommand("build", "assemble the star product");
  auto* sassoc = star->add_subcommand("assoc", "associativity residuals");
  auto* sclosed = star->add_subcommand("closed", "closedness residuals");
  for (auto* sc : {sbuild, sassoc, sclosed})
    sc->add_option("--poisson", cfg.poisson_text, "poisson text, e.g. \"hbar x3 d1^d2\"")
        ->required();

  auto* algebra = app.add_subcommand("algebra", "exact algebra");
  auto* selftest = algebra->add_subcommand("selftest", "run the exact identity batches");
  (void)selftest;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool needs_weights = wcomp->parsed() || wrel->parsed() || lcheck->parsed() || ccheck->parsed() ||
                       sbuild->parsed() || sassoc->parsed() || sclosed->parsed();
  if (needs_weights && cfg.samples < 10000) {
    std::cerr << "samples must be >= 10000 for weight-dependent commands\n";
    return 2;
  }

  try {
    WeightCache cache(cfg.cache_path.empty() ? std::string("dq_weights.cache") : cfg.cache_path);
    WeightEngine eng = make_engine(cfg, &cache);

    if (genum->parsed()) return cmd_graphs_enumerate(cfg);
    if (wcomp->parsed()) return cmd_weight_compute(cfg, eng);
    if (wrel->parsed()) {
      ExtGraph g = parse_graph(cfg.graph_text);
      std::vector<int> up = cfg.upows;
      up.resize(g.m, 0);
      return emit(cfg, check_weight_relation(g, up, eng, cfg.tol_sigmas, cfg.sigma_ceiling));
    }
    if (lcheck->parsed())
      return emit(cfg, check_linfty(parse_inputs(cfg), eng, cfg.tol_sigmas, cfg.sigma_ceiling));
    if (ccheck->parsed())
      return emit(cfg,
                  check_cyclic_invariance(parse_inputs(cfg), eng, cfg.tol_sigmas, cfg.sigma_ceiling));
    if (sbuild->parsed() || sassoc->parsed() || sclosed->parsed()) {
      UnimodularPoisson p = parse_poisson(cfg.poisson_text, cfg.dim, cfg.order);
      Report mc = check_maurer_cartan(p);
      if (!mc.passed) {
        std::cout << mc.text();
        write_json(cfg, mc.json());
        return 1;
      }
      StarProduct s = build_star(p, cfg.dim, eng);
      if (sbuild->parsed()) {
        nlohmann::json j;
        for (int r = 0; r <= s.order; ++r) {
          std::cout << "hbar^" << r << ":\n" << to_text(s.m[r]) << "\n";
          j["orders"].push_back(to_text(s.m[r]));
        }
        write_json(cfg, j.dump(2));
        return 0;
      }
      if (sassoc->parsed())
        return emit(cfg, check_associativity(s, cfg.tol_sigmas, cfg.sigma_ceiling));
      return emit(cfg, check_closed(s, cfg.tol_sigmas, cfg.sigma_ceiling));
    }
    if (selftest->parsed()) return cmd_algebra_selftest(cfg);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cerr << "unknown subcommand\n";
  return 2;
}
