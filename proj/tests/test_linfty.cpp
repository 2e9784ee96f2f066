#include "bvinf/zoo.hpp"

#include <doctest.h>

using namespace bvinf;

namespace {

// m1(u) = v, m2(a, b) = v, m2(c, u) = e on a six-dimensional space
LInftyStructure massey_example() {
  LInftyStructure l;
  l.space.labels = {"a", "b", "c", "u", "v", "e"};
  l.space.parity = {0, 0, 0, 0, 1, 1};
  MultiMap m1{1, 1, 6, {}};
  m1.table[{3}] = unit_vec(6, 4);
  MultiMap m2{2, 1, 6, {}};
  m2.table[{0, 1}] = unit_vec(6, 4);
  m2.table[{2, 3}] = unit_vec(6, 5);
  l.brackets = {m1, m2, MultiMap{3, 1, 6, {}}, MultiMap{4, 1, 6, {}}};
  return l;
}

}  // namespace

TEST_SUITE("linfty") {
  TEST_CASE("Lie algebras give L-infinity structures") {
    for (const auto& n : lie_zoo()) {
      CAPTURE(n.name);
      CHECK(check_relations(lie_linfty(n.lie, 4), 4).ok);
    }
  }

  TEST_CASE("a broken bracket fails with a witness") {
    LieData bad{3, {{0, 1, 2, Scalar(1)}, {0, 2, 0, Scalar(1)}}};
    auto l = lie_linfty(bad, 3);
    auto r = check_relations(l, 3);
    CHECK_FALSE(r.ok);
    CHECK(r.failing_arity == 3);
    CHECK_FALSE(r.witness.empty());
  }

  TEST_CASE("from_operator rejects curved and non-square-zero operators") {
    auto a = Algebra::exterior(2);
    LinearOperator curved = LinearOperator::zero(a.dim(), 1);
    curved.matrix.set(1, 0, 1);
    CHECK_THROWS_AS(from_operator(a, curved, 3), CurvedError);
    LinearOperator even = LinearOperator::zero(a.dim(), 0);
    CHECK_THROWS_AS(from_operator(a, even, 3), MathError);
  }

  TEST_CASE("exp morphism and homotopy abelianness on random operators") {
    Rng rng(44);
    for (int i = 0; i < 8; ++i) {
      auto a = random_algebra(rng, 10, 3);
      auto d = random_square_zero_operator(rng, a);
      auto l = from_operator(a, d, 4);
      CHECK(check_relations(l, 4).ok);
      CHECK(check_morphism(exp_morphism(a, d, 4), 4).ok);
      CHECK(is_homotopy_abelian_up_to(l, 4));
    }
  }

  TEST_CASE("homotopy transfer produces a valid minimal model") {
    auto l = massey_example();
    REQUIRE(check_relations(l, 4).ok);
    auto c = contraction_of(l.space, l.differential());
    CHECK(verify_contraction(c, l.differential()).empty());
    CHECK(c.homology.dim() == 4);
    auto ti = transfer_with_inclusion(l, c, 4);
    CHECK(check_relations(ti.source, 4).ok);
    CHECK(check_morphism(ti, 4).ok);
    CHECK(ti.source.bracket(1).is_zero());
    CHECK_FALSE(ti.source.bracket(3).is_zero());
    CHECK_FALSE(is_homotopy_abelian_up_to(l, 4));
  }

  TEST_CASE("identity contraction leaves a minimal structure unchanged") {
    auto l = lie_linfty(LieData::heisenberg(), 3);
    auto t = transfer(l, identity_contraction(l.space), 3);
    for (int n = 1; n <= 3; ++n) CHECK(t.bracket(n).table == l.bracket(n).table);
  }

  TEST_CASE("test cdgas are valid and MC agrees with the exponential cycle condition") {
    auto zoo = test_cdga_zoo();
    CHECK(zoo.size() >= 5);
    for (const auto& c : zoo) CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(test_cdga("nope"), InputError);
    Rng rng(8);
    for (int i = 0; i < 21; ++i) {
      auto a = random_algebra(rng, 8);
      auto d = random_square_zero_operator(rng, a);
      const auto& c = zoo[static_cast<std::size_t>(i) % zoo.size()];
      auto xi = random_mc_candidate(rng, c, a, d, true);
      auto m = mc_exponential_check(a, d, c, xi);
      CHECK(m.is_mc);
      CHECK(m.agree());
      auto l = from_operator(a, d, std::max(1, c.algebra.nilpotency() - 1));
      CHECK(is_zero(mc_residual(l, c, xi)));
    }
  }

  TEST_CASE("push-forward along exp sends MC elements to cycles") {
    Rng rng(12);
    const auto& c = test_cdga("two-epsilon");
    for (int i = 0; i < 6; ++i) {
      auto a = random_algebra(rng, 8);
      auto d = random_square_zero_operator(rng, a);
      auto xi = random_mc_candidate(rng, c, a, d, true);
      auto f = exp_morphism(a, d, 4);
      auto y = push_forward(f, c, xi);
      CHECK(is_zero(total_differential(c, a, d).apply(y)));
    }
  }
}
