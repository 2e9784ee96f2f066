#include "bvinf/zoo.hpp"

#include <doctest.h>

using namespace bvinf;

namespace {

PolyMultivector mv(const std::string& s, int n) { return parse_expression(s, n, true); }
PolyForm fm(const std::string& s, int n) { return parse_expression(s, n, false); }

int odd_deg(const SuperPoly& p) { return std::max(0, p.max_odd_degree()); }

}  // namespace

TEST_SUITE("polygeom") {
  TEST_CASE("parsing and printing round-trip") {
    for (std::string s : {"x1*@1^@2", "@1^@2 + x1*@1^@2^@3^@4", "-1/2*x2*x2*@3"}) {
      auto p = mv(s, 4);
      CHECK(mv(format_multivector(p), 4) == p);
    }
    auto w = fm("x1*dx2 - 3*dx1^dx2", 2);
    CHECK(fm(format_form(w), 2) == w);
    CHECK_THROWS_AS(mv("@5", 4), InputError);
    CHECK_THROWS_AS(mv("x1*", 2), InputError);
    CHECK_THROWS_AS(fm("1/0*dx1", 2), InputError);
  }

  TEST_CASE("sign fixtures for interior product and de Rham differential") {
    CHECK(interior(mv("@1^@2", 2), fm("dx1^dx2", 2)) == fm("-1", 2));
    CHECK(interior(mv("@1", 2), fm("dx1^dx2", 2)) == fm("dx2", 2));
    CHECK(derham_d(fm("x1*dx2", 2)) == fm("dx1^dx2", 2));
    CHECK(derham_d(derham_d(fm("x1*x2*x2", 2))).is_zero());
    CHECK(lie_derivative(mv("@1", 2), fm("x1*x1*x2*dx2", 2)) == fm("2*x1*x2*dx2", 2));
  }

  TEST_CASE("Schouten bracket matches the oracle and satisfies graded identities") {
    Rng rng(5);
    for (int it = 0; it < 60; ++it) {
      const int n = rng.uniform(2, 4);
      auto a = random_k_vector(rng, n, rng.uniform(0, n), 2);
      auto b = random_k_vector(rng, n, rng.uniform(0, n), 2);
      auto c = random_k_vector(rng, n, rng.uniform(0, n), 1);
      const int p = odd_deg(a), q = odd_deg(b);
      CHECK(schouten(a, b) == schouten_oracle(a, b));
      CHECK(schouten(a, b) == schouten(b, a).scaled(-parity_sign((p - 1) * (q - 1))));
      CHECK(schouten(a, schouten(b, c)) ==
            schouten(schouten(a, b), c) + schouten(b, schouten(a, c)).scaled(parity_sign((p - 1) * (q - 1))));
      CHECK(schouten(a, b * c) == schouten(a, b) * c + (b * schouten(a, c)).scaled(parity_sign((p - 1) * q)));
    }
  }

  TEST_CASE("linear Poisson structure on R^2") {
    auto p = mv("x1*@1^@2", 2);
    auto c = check_poisson(p);
    CHECK(c.poisson);
    CHECK(c.oracle_agrees);
    CHECK(dsquared_check(p, 6, 3));
    CHECK(koszul_brackets(p, 2, {fm("dx1", 2), fm("dx2", 2)}) == fm("dx1", 2));
    CHECK(koszul_brackets(p, 3, {fm("dx1", 2), fm("dx2", 2), fm("x1", 2)}).is_zero());
  }

  TEST_CASE("generalized Poisson structure on R^4") {
    auto p = mv("@1^@2 + x1*@1^@2^@3^@4", 4);
    auto c = check_poisson(p);
    CHECK(c.poisson);
    CHECK(c.degreewise);
    CHECK(c.components == std::vector<int>{1, 3});
    CHECK(koszul_brackets(p, 4, {fm("dx1", 4), fm("dx2", 4), fm("dx3", 4), fm("dx4", 4)}) == fm("-dx1", 4));
  }

  TEST_CASE("non-Poisson bivector is detected") {
    auto p = mv("x3*@1^@2 + x1*@1^@3", 3);
    auto c = check_poisson(p);
    CHECK(c.oracle_agrees);
    CHECK_FALSE(c.poisson);
    CHECK_FALSE(c.first_nonzero.empty());
    CHECK_THROWS_AS(koszul_brackets(p, 2, {fm("dx1", 3), fm("dx2", 3)}), MathError);
  }

  TEST_CASE("order of L_Q is bounded by k and attained") {
    Rng rng(21);
    for (int k = 1; k <= 3; ++k) {
      auto q = random_k_vector(rng, 3, k, 2);
      CHECK(koszul_order_check(q, k, 4).ok);
    }
    auto q = mv("@1^@2", 2);
    CHECK(koszul_order_check(q, 2, 4).ok);
    CHECK_FALSE(koszul_order_check(q, 1, 4).ok);
  }
}
