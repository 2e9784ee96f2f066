#include "bvinf/problem.hpp"

#include <doctest.h>

using namespace bvinf;

TEST_SUITE("bvinfty") {
  TEST_CASE("CE complexes of the zoo are BV-infinity families") {
    for (const auto& n : lie_zoo()) {
      if (n.lie.dim > 4) continue;
      CAPTURE(n.name);
      auto bv = ce_complex(lie_linfty(n.lie, 4), 4);
      auto rep = check_bv(bv.algebra, bv.op);
      CHECK(rep.ok);
      auto fs = rescaled_structure(bv, 4);
      CHECK(check_relations(fs.rescaled, 4).ok);
      CHECK(check_relations(fs.fiber, 4).ok);
    }
  }

  TEST_CASE("check_bv reports violations") {
    auto a = Algebra::exterior(2);
    HOperator op;
    op.truncation = 2;
    LinearOperator d = LinearOperator::zero(a.dim(), 1);
    d.matrix.set(1, 0, 1);  // D(1) != 0
    op.components = {d};
    auto rep = check_bv(a, op);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.unit_ok);
    CHECK_FALSE(rep.violations.empty());
  }

  TEST_CASE("Heisenberg: not free at N = 2, 14 against 16") {
    auto bv = problem_bv(fixture_problem("heisenberg"));
    auto l = degeneration_level(bv, 2);
    CHECK(l.homology_dim == 14);
    CHECK(l.base_dim == 8);
    CHECK_FALSE(l.free_by_blocks);
    CHECK(l.certificates_agree());
    auto ki = kernel_image(bv.op.total_matrix(bv.dim(), 2));
    CHECK(ki.kernel.size() == 15);
    CHECK(ki.image.size() == 1);
    auto v = main_theorem_check(bv, 4, 4);
    CHECK_FALSE(v.degenerate);
    CHECK_FALSE(v.abelian);
    CHECK(v.consistent());
  }

  TEST_CASE("abelian CE complex is free at every level") {
    auto r = degeneration_check(problem_bv(fixture_problem("abelian3")), 4);
    CHECK(r.degenerate());
    CHECK(r.certificates_agree());
    CHECK(r.levels.size() == 4);
  }

  TEST_CASE("gauge families degenerate with abelian minimal models") {
    Rng rng(31);
    for (int i = 0; i < 6; ++i) {
      auto bv = random_gauge_family(rng, 3);
      REQUIRE(check_bv(bv.algebra, bv.op).ok);
      auto v = main_theorem_check(bv, 4, 3);
      CHECK(v.degenerate);
      CHECK(v.abelian);
    }
  }

  TEST_CASE("E1 lifting test agrees with freeness level by level") {
    Rng rng(77);
    for (int i = 0; i < 20; ++i) {
      auto f = random_bv_family(rng, 3);
      CAPTURE(f.kind);
      auto deg = degeneration_check(f.bv, 3);
      auto lift = e1_lift_check(f.bv, 3);
      REQUIRE(lift.size() == deg.levels.size());
      for (std::size_t n = 0; n < lift.size(); ++n) CHECK(lift[n] == deg.levels[n].free_by_blocks);
      CHECK(e1_collapses(f.bv, 3) == deg.degenerate());
    }
  }

  TEST_CASE("rescaling divides m_n by h^(n-1) on odd L-infinity CE complexes") {
    Rng rng(5);
    for (int i = 0; i < 5; ++i) {
      auto l = random_odd_linfty(rng, 4);
      REQUIRE(check_relations(l, 4).ok);
      auto fs = rescaled_structure(ce_complex(l, 4), 4);
      CHECK(check_relations(fs.rescaled, 4).ok);
    }
  }
}
