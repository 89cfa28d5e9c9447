#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "dq/weights.hpp"

using namespace dq;

namespace {
WeightParams quick(long samples = 200000) {
  WeightParams p;
  p.samples = samples;
  return p;
}
}  // namespace

TEST_CASE("structural zeros are exact") {
  WeightEngine e(quick(1));
  // any edge into the marked boundary point
  for (const char* s : {"1 1 | b0", "1 2 | b0 b1", "2 1 | i2 b0 | b1"}) {
    Weight w = e.weight(parse_graph(s), std::vector<int>(parse_graph(s).m, 0));
    CHECK(w.value == 0.0);
    CHECK(w.err == 0.0);
  }
  // tadpole graphs with n = 0
  for (const char* s : {"1 0 | i1", "2 0 | i1 i2 | b0"}) {
    ExtGraph g = parse_graph(s);
    if (!g.has_tadpole(1)) continue;
    Weight w = e.weight(g, std::vector<int>(g.m, 0));
    CHECK(w.value == 0.0);
    CHECK(w.err == 0.0);
  }
}

TEST_CASE("single edge anchor") {
  WeightEngine e(quick());
  Weight w = e.weight(parse_graph("1 1 | b1"), {0});
  CHECK(w.err < 0.05);
  CHECK(std::fabs(w.value - 1.0) < 5 * std::max(w.err, 1e-6));
}

TEST_CASE("tadpole weight one half") {
  WeightEngine e(quick());
  Weight w = e.weight(parse_graph("1 1 | i1"), {0});
  CHECK(std::fabs(w.value - 0.5) < 5 * std::max(w.err, 1e-6));
}

TEST_CASE("u power weight of the empty vertex") {
  // single interior vertex, no out-edges, one varpi factor: weight 1/2
  WeightEngine e(quick());
  Weight w = e.weight(parse_graph("1 2 |"), {1});
  CHECK(std::fabs(w.value - 0.5) < 5 * std::max(w.err, 1e-6));
}

TEST_CASE("wedge weight one half") {
  WeightEngine e(quick());
  Weight w = e.weight(parse_graph("1 2 | b1 b2"), {0});
  CHECK(std::fabs(w.value - 0.5) < 5 * std::max(w.err, 1e-6));
}

TEST_CASE("star reordering only flips the sign") {
  WeightEngine e(quick(50000));
  Weight a = e.weight(parse_graph("1 2 | b1 b2"), {0});
  Weight b = e.weight(parse_graph("1 2 | b2 b1"), {0});
  CHECK(a.value == doctest::Approx(-b.value));
  CHECK(a.err == doctest::Approx(b.err));
}

TEST_CASE("determinism for identical parameters") {
  WeightEngine e1(quick(50000)), e2(quick(50000));
  Weight a = e1.weight(parse_graph("1 2 | i1 b1"), {0});
  Weight b = e2.weight(parse_graph("1 2 | i1 b1"), {0});
  CHECK(a.value == b.value);
  CHECK(a.err == b.err);
}

TEST_CASE("cache roundtrip through file") {
  std::string path = (std::filesystem::temp_directory_path() / "dq_test_cache.txt").string();
  std::remove(path.c_str());
  {
    WeightCache cache(path);
    WeightEngine e(quick(50000), &cache);
    e.weight(parse_graph("1 1 | i1"), {0});
    CHECK(cache.size() >= 1);
  }
  {
    WeightCache cache(path);
    CHECK(cache.size() >= 1);
    WeightEngine e(quick(50000), &cache);
    // served from cache: identical value without integration
    Weight w = e.weight(parse_graph("1 1 | i1"), {0});
    WeightEngine fresh(quick(50000));
    Weight w2 = fresh.weight(parse_graph("1 1 | i1"), {0});
    CHECK(w.value == w2.value);
  }
  std::remove(path.c_str());
}

TEST_CASE("second chart reproduces the anchor") {
  WeightParams p = quick();
  p.base = std::complex<double>(0.0, 0.5);
  Weight w = integrate_weight(parse_graph("1 1 | b1"), {0}, p);
  CHECK(std::fabs(w.value - 1.0) < 5 * std::max(w.err, 1e-6));
}
