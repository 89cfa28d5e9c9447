#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dq/polynomial.hpp"
#include "dq/polyvector.hpp"
#include "random_inputs.hpp"

using namespace dq;

TEST_CASE("polynomial arithmetic and partials") {
  Polynomial x1 = Polynomial::coordinate(3, 1);
  Polynomial x2 = Polynomial::coordinate(3, 2);
  Polynomial p = x1 * x1 * x2 + Rat(3) * x2;
  CHECK(p.partial(1) == Rat(2) * x1 * x2);
  CHECK(p.partial(2) == x1 * x1 + Polynomial::constant(3, 3));
  CHECK(p.partial(3).is_zero());
  CHECK(parse_polynomial("x1^2 x2 + 3 x2", 3) == p);
  CHECK(parse_polynomial(to_string(p), 3) == p);
}

TEST_CASE("sort_with_sign counts inversions") {
  std::vector<int> idx = {3, 1, 2};
  CHECK(sort_with_sign(idx) == 1);
  CHECK(idx == std::vector<int>{1, 2, 3});
  idx = {2, 1};
  CHECK(sort_with_sign(idx) == -1);
  idx = {1, 1};
  CHECK(sort_with_sign(idx) == 0);
}

TEST_CASE("wedge is graded commutative and associative") {
  std::mt19937 rng(11);
  for (int it = 0; it < 100; ++it) {
    PolyVector a = dqtest::rand_polyvector(rng, 3, 1 + (int)(rng() % 2), 2);
    PolyVector b = dqtest::rand_polyvector(rng, 3, 1 + (int)(rng() % 2), 2);
    PolyVector c = dqtest::rand_polyvector(rng, 3, 1, 2);
    int e = a.degree() * b.degree();
    PolyVector ba = wedge(b, a);
    if (e % 2) ba = -ba;
    CHECK(wedge(a, b) == ba);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("wedge oracle d1^d2 against components") {
  PolyVector v = wedge(PolyVector::term(2, {1}, parse_polynomial("x1", 2)),
                       PolyVector::term(2, {2}, Polynomial::constant(2, 1)));
  CHECK(v.degree() == 2);
  CHECK(v.comp({1, 2}) == parse_polynomial("x1", 2));
  CHECK(v.tensor({2, 1}) == -parse_polynomial("x1", 2));
  CHECK(v.tensor({1, 1}).is_zero());
}

TEST_CASE("schouten on vector fields is the Lie bracket") {
  // [x1 d1, d1] = -d1, [x1 d1, x1 d2] = x1 d2
  PolyVector a = parse_polyvector("x1 d1", 2);
  CHECK(schouten(a, parse_polyvector("d1", 2)) == parse_polyvector("-d1", 2));
  CHECK(schouten(a, parse_polyvector("x1 d2", 2)) == parse_polyvector("x1 d2", 2));
  // on functions: [v, f] reduces to v(f) up to the fixed sign convention
  PolyVector f = PolyVector::function(parse_polynomial("x1^2", 2));
  PolyVector vf = schouten(a, f);
  CHECK(vf.degree() == 0);
  CHECK(vf.comp({}) == parse_polynomial("2 x1^2", 2));
}

TEST_CASE("schouten is a graded derivation of wedge") {
  std::mt19937 rng(12);
  for (int it = 0; it < 100; ++it) {
    PolyVector a = dqtest::rand_polyvector(rng, 2, 1 + (int)(rng() % 2), 2);
    PolyVector b = dqtest::rand_polyvector(rng, 2, 1 + (int)(rng() % 2), 2);
    PolyVector c = dqtest::rand_polyvector(rng, 2, 1 + (int)(rng() % 2), 2);
    // [a, b^c] = [a,b]^c + (-1)^{(|a|-1)|b|} b^[a,c]
    PolyVector rhs = wedge(schouten(a, b), c);
    PolyVector t = wedge(b, schouten(a, c));
    if (((a.degree() - 1) * b.degree()) % 2) t = -t;
    CHECK(schouten(a, wedge(b, c)) == rhs + t);
  }
}

TEST_CASE("divergence oracle") {
  CHECK(divergence(parse_polyvector("x1 d1", 2)) ==
        PolyVector::function(Polynomial::constant(2, 1)));
  CHECK(divergence(parse_polyvector("x2 d1", 2)).is_zero());
  // dv(x1 d1^d2) = d2 (contract first index, wedge sign convention)
  PolyVector dv = divergence(parse_polyvector("x1 d1^d2", 2));
  CHECK(dv.degree() == 1);
  CHECK((dv == parse_polyvector("d2", 2) || dv == parse_polyvector("-d2", 2)));
}

TEST_CASE("divergence squares to zero") {
  std::mt19937 rng(13);
  for (int it = 0; it < 100; ++it) {
    PolyVector a = dqtest::rand_polyvector(rng, 3, 2 + (int)(rng() % 2), 3);
    CHECK(divergence(divergence(a)).is_zero());
  }
}

TEST_CASE("polyvector text roundtrip") {
  std::mt19937 rng(14);
  for (int it = 0; it < 50; ++it) {
    PolyVector a = dqtest::rand_polyvector(rng, 3, (int)(rng() % 3), 3);
    if (a.is_zero()) continue;
    CHECK(parse_polyvector(to_string(a), 3) == a);
  }
}
