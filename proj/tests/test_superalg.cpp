#include "bvinf/zoo.hpp"

#include <doctest.h>

using namespace bvinf;

namespace {

std::vector<LinearOperator> odd_partials(const Algebra& a) {
  std::vector<LinearOperator> out;
  const std::size_t k = a.generators().size();
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Vec> v(k, zero_vec(a.dim()));
    v[i] = a.unit();
    out.push_back(derivation_from_generators(a, v, 1));
  }
  return out;
}

}  // namespace

TEST_SUITE("superalg") {
  TEST_CASE("monomial algebras satisfy the axioms") {
    for (auto gens : std::vector<std::vector<Generator>>{{{"x", 0, 3}, {"t", 1, 2}},
                                                         {{"t1", 1, 2}, {"t2", 1, 2}, {"t3", 1, 2}},
                                                         {{"x", 0, 5}}}) {
      auto a = Algebra::monomial(gens);
      CHECK(check_algebra(a).ok);
      CHECK(a.has_ideal());
    }
    CHECK(Algebra::exterior(3).dim() == 8);
    CHECK(Algebra::truncated_polynomial(5).dim() == 5);
  }

  TEST_CASE("odd generators anticommute and square to zero") {
    auto a = Algebra::exterior(2);
    auto t1 = a.basis(*a.monomial_index({1, 0}));
    auto t2 = a.basis(*a.monomial_index({0, 1}));
    CHECK(a.mul(t1, t2) == Scalar(-1) * a.mul(t2, t1));
    CHECK(is_zero(a.mul(t1, t1)));
    CHECK(a.parity_of(a.mul(t1, t2)) == 0);
    CHECK(a.parity_of(t1 + a.unit()) == std::nullopt);
  }

  TEST_CASE("tensor product is a super-commutative algebra") {
    auto t = tensor(Algebra::exterior(1, "n"), Algebra::monomial({{"x", 0, 2}, {"t", 1, 2}}));
    CHECK(t.dim() == 8);
    CHECK(check_algebra(t).ok);
  }

  TEST_CASE("exp and log are inverse on the ideal") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      auto a = random_algebra(rng, 12);
      Vec x = random_ideal_element(rng, a, 0);
      CHECK(log(a, exp(a, x)) == x);
      auto y = random_ideal_element(rng, a, 0);
      CHECK(exp(a, x + y) == a.mul(exp(a, x), exp(a, y)));
    }
  }

  TEST_CASE("operator order") {
    auto a = Algebra::exterior(3);
    auto d = odd_partials(a);
    CHECK(operator_order(a, d[0], 5) == 1);
    CHECK(operator_order(a, compose(compose(d[0], d[1]), d[2]), 5) == 3);
    CHECK(operator_order(a, multiplication(a, a.basis(1)), 5) == 0);
    auto t3 = a.basis(*a.monomial_index({0, 0, 1}));
    auto bv = compose(multiplication(a, t3), compose(d[0], d[1]));
    CHECK(operator_order(a, bv, 5) == 2);
    CHECK(order_via_derived_maps(a, bv, 5) == 2);
  }

  TEST_CASE("derivation has order one and a derived map of arity 2 that vanishes") {
    auto a = Algebra::exterior(3);
    auto d = odd_partials(a)[1];
    CHECK(derived_map(a, d, 2).is_zero());
    CHECK_FALSE(derived_map(a, d, 1).is_zero());
  }

  TEST_CASE("derived_value agrees with the memoized derived_map") {
    Rng rng(9);
    for (int t = 0; t < 4; ++t) {
      auto a = random_algebra(rng, 10, 4);
      auto d = random_odd_operator(rng, a);
      for (int n = 1; n <= 3; ++n) {
        auto m = derived_map(a, d, n);
        for (const auto& k : multisets(a.space().parity, n)) {
          const Vec* f = m.find(k);
          CHECK(derived_value(a, d, k) == (f ? *f : zero_vec(a.dim())));
        }
      }
    }
  }

  TEST_CASE("Koszul signs") {
    std::vector<int> par{1, 1, 0};
    Key k{1, 0};
    CHECK(sort_with_sign(k, par) == -1);
    CHECK(k == Key{0, 1});
    Key e{2, 0};
    CHECK(sort_with_sign(e, par) == 1);
    Key rep{1, 1};
    CHECK(sort_with_sign(rep, par) == 0);
    Key even_rep{2, 2};
    CHECK(sort_with_sign(even_rep, par) == 1);
    CHECK(koszul_sign({1, 1, 1}, {2, 1, 0}) == -1);
    CHECK(multisets({1, 1}, 2).size() == 1);
    CHECK(multisets({0, 0}, 2).size() == 3);
  }

  TEST_CASE("exponential conjugation identity") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
      auto a = random_algebra(rng, 10);
      CHECK(exp_conjugation_check(a, random_odd_operator(rng, a), random_ideal_element(rng, a, 0)));
    }
    auto a = Algebra::exterior(2);
    CHECK_THROWS_AS(exp_neg_ad(a, odd_partials(a)[0], a.basis(1)), MathError);
  }

  TEST_CASE("h-operator total matrix") {
    HOperator op;
    op.truncation = 2;
    auto a = Algebra::exterior(1);
    op.components = {LinearOperator::zero(2, 1), odd_partials(a)[0]};
    auto m = op.total_matrix(2, 2);
    CHECK(m.rows() == 4);
    // h * d/dt sends t (index 1, level 0) to h * 1 (index 2)
    CHECK(m.get(2, 1) == 1);
    CHECK(op.component(5, 2).is_zero());
  }
}
