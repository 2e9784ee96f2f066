#include "bvinf/zoo.hpp"

#include <doctest.h>

using namespace bvinf;

namespace {

PolyMultivector mv(const std::string& s, int n) { return parse_expression(s, n, true); }

}  // namespace

TEST_SUITE("invariant_model") {
  TEST_CASE("Jacobi identity") {
    CHECK(jacobi_violation(LieData::sl2()).empty());
    CHECK(jacobi_violation(LieData::heisenberg()).empty());
    for (const auto& n : lie_zoo()) CHECK(jacobi_violation(n.lie).empty());
    LieData bad{3, {{0, 1, 2, Scalar(1)}, {0, 2, 0, Scalar(1)}}};
    CHECK_FALSE(jacobi_violation(bad).empty());
  }

  TEST_CASE("structure constant validation") {
    LieData self{2, {{0, 0, 1, Scalar(1)}}};
    CHECK_THROWS_AS(self.table(), InputError);
    LieData range{2, {{0, 5, 1, Scalar(1)}}};
    CHECK_THROWS_AS(range.table(), InputError);
  }

  TEST_CASE("Schouten bracket on Lambda(g) matches the wedge formula") {
    Rng rng(3);
    for (const auto& n : lie_zoo()) {
      if (n.lie.dim > 4) continue;
      for (int t = 0; t < 8; ++t) {
        auto a = random_k_vector(rng, n.lie.dim, rng.uniform(0, n.lie.dim), 0);
        auto b = random_k_vector(rng, n.lie.dim, rng.uniform(0, n.lie.dim), 0);
        CHECK(lie_schouten(n.lie, a, b) == lie_schouten_wedge(n.lie, a, b));
      }
    }
  }

  TEST_CASE("e1^e2 is not Poisson for [e1,e2] = e3, e1^e3 is") {
    LieData g{4, {{0, 1, 2, Scalar(1)}}};
    auto p12 = mv("@1^@2", 4);
    CHECK_FALSE(lie_schouten(g, p12, p12).is_zero());
    CHECK_THROWS_AS(invariant_model(g, p12, 3), MathError);
    auto p13 = mv("@1^@3", 4);
    CHECK(lie_schouten(g, p13, p13).is_zero());
    auto r = invariant_model(g, p13, 3);
    CHECK(check_bv(r.bv.algebra, r.bv.op).ok);
    CHECK(degeneration_check(r.bv, 3).degenerate());
  }

  TEST_CASE("invariance is reported") {
    auto sl2 = LieData::sl2();
    CHECK(is_invariant(sl2, mv("@1^@2^@3", 3)));
    CHECK_FALSE(is_invariant(sl2, mv("@1^@2", 3)));
  }

  TEST_CASE("interior and Lie derivative operators on the model") {
    auto r = invariant_model(LieData::heisenberg(), mv("@1^@3", 3), 2);
    auto lp = model_lie_derivative(r.model, r.model.p);
    CHECK(lp.parity == 1);
    CHECK(is_zero(lp.apply(r.model.algebra.unit())));
    auto ip = model_interior(r.model, r.model.p);
    CHECK(ip.parity == 0);
    CHECK((graded_commutator(ip, r.model.d).matrix == lp.matrix));
  }

  TEST_CASE("input validation") {
    auto h = LieData::heisenberg();
    CHECK_THROWS_AS(invariant_model(h, mv("x1*@1^@3", 3), 2), InputError);
    CHECK_THROWS_AS(invariant_model(h, mv("@1", 3), 2), InputError);
  }

  TEST_CASE("generated invariant cases are Poisson and degenerate") {
    Rng rng(8);
    for (const auto& c : invariant_cases(rng, 12)) {
      CAPTURE(c.name);
      CHECK(lie_schouten(c.lie, c.p, c.p).is_zero());
      auto r = invariant_model(c.lie, c.p, 3);
      auto deg = degeneration_check(r.bv, 3);
      CHECK(deg.degenerate());
      CHECK(e1_collapses(r.bv, 3));
    }
  }
}
