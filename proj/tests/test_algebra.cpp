#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dq/hochschild.hpp"
#include "dq/polyvector.hpp"
#include "random_inputs.hpp"

// Exact identities of the two graded algebras, each on a batch of
// randomized instances. Everything here is rational arithmetic; any
// nonzero residual is a hard failure.

using namespace dq;
using namespace dqtest;

namespace {
constexpr int kInstances = 200;

int deg(const OpQ& op) { return op.arity() - 1; }  // shifted degree of a p-ary cochain
}  // namespace

TEST_CASE("hochschild differential squares to zero") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> ar(1, 3);
  for (int t = 0; t < kInstances; ++t) {
    OpQ phi = rand_op(rng, 2, ar(rng));
    CHECK(hochschild_diff(hochschild_diff(phi)).is_zero());
  }
}

TEST_CASE("gerstenhaber bracket is graded antisymmetric") {
  std::mt19937 rng(102);
  std::uniform_int_distribution<int> ar(1, 3);
  for (int t = 0; t < kInstances; ++t) {
    OpQ a = rand_op(rng, 2, ar(rng));
    OpQ b = rand_op(rng, 2, ar(rng));
    // [a,b] = -(-1)^{|a||b|} [b,a]
    OpQ lhs = gerstenhaber(a, b);
    OpQ rhs = gerstenhaber(b, a);
    if ((deg(a) * deg(b)) % 2 != 0) rhs = -rhs;
    CHECK((lhs + rhs).is_zero());
  }
}

TEST_CASE("gerstenhaber bracket satisfies the graded Jacobi identity") {
  std::mt19937 rng(103);
  std::uniform_int_distribution<int> ar(1, 2);
  for (int t = 0; t < kInstances; ++t) {
    OpQ a = rand_op(rng, 2, ar(rng));
    OpQ b = rand_op(rng, 2, ar(rng));
    OpQ c = rand_op(rng, 2, ar(rng));
    // (-1)^{|a||c|}[a,[b,c]] + cyclic = 0
    auto term = [](const OpQ& x, const OpQ& y, const OpQ& z) {
      OpQ r = gerstenhaber(x, gerstenhaber(y, z));
      if ((deg(x) * deg(z)) % 2 != 0) r = -r;
      return r;
    };
    OpQ j = term(a, b, c) + term(b, c, a) + term(c, a, b);
    CHECK(j.is_zero());
  }
}

TEST_CASE("cup product is associative") {
  std::mt19937 rng(104);
  std::uniform_int_distribution<int> ar(1, 2);
  for (int t = 0; t < kInstances; ++t) {
    OpQ a = rand_op(rng, 2, ar(rng));
    OpQ b = rand_op(rng, 2, ar(rng));
    OpQ c = rand_op(rng, 2, ar(rng));
    CHECK(cup(cup(a, b), c) == cup(a, cup(b, c)));
  }
}

TEST_CASE("schouten bracket is graded antisymmetric") {
  std::mt19937 rng(105);
  std::uniform_int_distribution<int> dg(1, 3);
  for (int t = 0; t < kInstances; ++t) {
    PolyVector a = rand_polyvector(rng, 3, dg(rng));
    PolyVector b = rand_polyvector(rng, 3, dg(rng));
    // [a,b] = -(-1)^{(ka-1)(kb-1)} [b,a]
    PolyVector lhs = schouten(a, b);
    PolyVector rhs = schouten(b, a);
    if (((a.degree() - 1) * (b.degree() - 1)) % 2 != 0) rhs = -rhs;
    CHECK((lhs + rhs).is_zero());
  }
}

TEST_CASE("schouten bracket satisfies the graded Jacobi identity") {
  std::mt19937 rng(106);
  std::uniform_int_distribution<int> dg(1, 2);
  for (int t = 0; t < kInstances; ++t) {
    PolyVector a = rand_polyvector(rng, 2, dg(rng));
    PolyVector b = rand_polyvector(rng, 2, dg(rng));
    PolyVector c = rand_polyvector(rng, 2, dg(rng));
    auto term = [](const PolyVector& x, const PolyVector& y, const PolyVector& z) {
      PolyVector r = schouten(x, schouten(y, z));
      if (((x.degree() - 1) * (z.degree() - 1)) % 2 != 0) r = -r;
      return r;
    };
    PolyVector j = term(a, b, c) + term(b, c, a) + term(c, a, b);
    CHECK(j.is_zero());
  }
}

TEST_CASE("divergence squares to zero") {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> dg(2, 3);
  for (int t = 0; t < kInstances; ++t) {
    PolyVector a = rand_polyvector(rng, 3, dg(rng), 3);
    CHECK(divergence(divergence(a)).is_zero());
  }
}

TEST_CASE("divergence is a derivation of the schouten bracket") {
  std::mt19937 rng(108);
  std::uniform_int_distribution<int> dg(1, 3);
  for (int t = 0; t < kInstances; ++t) {
    PolyVector a = rand_polyvector(rng, 3, dg(rng));
    PolyVector b = rand_polyvector(rng, 3, dg(rng));
    CHECK(divergence_derivation_defect(a, b).is_zero());
  }
}

TEST_CASE("hochschild differential is a derivation of the bracket") {
  std::mt19937 rng(109);
  std::uniform_int_distribution<int> ar(1, 2);
  for (int t = 0; t < kInstances; ++t) {
    OpQ a = rand_op(rng, 2, ar(rng));
    OpQ b = rand_op(rng, 2, ar(rng));
    OpQ lhs = hochschild_diff(gerstenhaber(a, b));
    OpQ rhs = gerstenhaber(hochschild_diff(a), b);
    OpQ second = gerstenhaber(a, hochschild_diff(b));
    if (deg(a) % 2 != 0) second = -second;
    rhs += second;
    CHECK(lhs == rhs);
  }
}
