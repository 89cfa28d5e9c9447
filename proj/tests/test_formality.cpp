#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dq/formality.hpp"
#include "dq/text.hpp"

#include <nlohmann/json.hpp>

using namespace dq;

namespace {
WeightEngine quick_engine(long samples = 200000) {
  WeightParams p;
  p.samples = samples;
  return WeightEngine(p);
}
}  // namespace

TEST_CASE("shuffle_sign counts odd-parity transpositions") {
  // swapping two odd entries flips the sign
  CHECK(shuffle_sign({1, 1}, {0, 1}) == 1);
  CHECK(shuffle_sign({1, 1}, {1, 0}) == -1);
  // even entries commute freely
  CHECK(shuffle_sign({2, 2}, {1, 0}) == 1);
  CHECK(shuffle_sign({2, 1, 1}, {2, 1, 0}) == -1);
  CHECK(shuffle_sign({1, 2, 1}, {2, 1, 0}) == -1);
}

TEST_CASE("first taylor coefficient on a divergence-free field") {
  WeightEngine eng = quick_engine();
  PolyVector v = parse_polyvector("x2 d1", 2);
  OpM got = taylor_as_op({UInput{0, v}}, eng);
  // expect x2 d1 as a 1-ary operator within 5 sigma per coefficient
  OpQ expect(2, 1);
  expect.add_term(OpKey{MultiIndex{0, 1}, {MultiIndex{1, 0}}}, Rat(1));
  for (const auto& [k, s] : got.terms()) {
    auto it = expect.terms().find(k);
    double want = (it == expect.terms().end()) ? 0.0 : to_double(it->second);
    CHECK(std::fabs(s.v - want) < 5 * std::max(s.sigma(), 1e-6));
  }
  for (const auto& [k, s] : expect.terms()) CHECK(got.terms().count(k) == 1);
}

TEST_CASE("second taylor coefficient on vector fields vanishes") {
  WeightEngine eng = quick_engine(100000);
  PolyVector a = parse_polyvector("x1 d2", 2);
  PolyVector b = parse_polyvector("x2 d1", 2);
  OpM got = taylor_as_op({UInput{0, a}, UInput{0, b}}, eng);
  for (const auto& [k, s] : got.terms()) CHECK(std::fabs(s.v) < 5 * std::max(s.sigma(), 1e-6));
}

TEST_CASE("report verdict folding") {
  Report r;
  r.title = "demo";
  r.add("fine", Meas(0.001, 1e-4));
  r.add("also fine", Meas(-0.002, 1e-4));
  r.finish();
  CHECK(r.passed);
  Report bad;
  bad.add("off", Meas(1.0, 1e-6));
  bad.finish();
  CHECK(!bad.passed);
  Report vacuous;
  vacuous.sigma_ceiling = 0.02;
  vacuous.add("huge error bar", Meas(0.0, 1.0));
  vacuous.finish();
  CHECK(!vacuous.passed);
}

TEST_CASE("report json is parseable and complete") {
  Report r;
  r.title = "demo";
  r.add("row a", Meas(0.001, 1e-4));
  r.finish();
  auto j = nlohmann::json::parse(r.json());
  CHECK(j["title"] == "demo");
  CHECK(j["passed"] == true);
  CHECK(j["tol_sigmas"] == 3.0);
  CHECK(j.contains("sigma_ceiling"));
  CHECK(j.contains("max_sigma"));
  REQUIRE(j["rows"].is_array());
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0].contains("label"));
  CHECK(j["rows"][0].contains("value"));
  CHECK(j["rows"][0].contains("sigma"));
  CHECK(j["rows"][0].contains("pass"));
}

TEST_CASE("weight relation for the two-edge line graph") {
  WeightEngine eng = quick_engine(100000);
  Report r = check_weight_relation(parse_graph("1 2 | b1 b2"), {0}, eng, 5.0, 0.1);
  CHECK(r.passed);
}
