#include "bvinf/exactlin.hpp"

#include <doctest.h>

#include <random>

using namespace bvinf;

namespace {

SparseMatrix random_matrix(std::mt19937& g, std::size_t r, std::size_t c, int density) {
  SparseMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i)
      if (static_cast<int>(g() % 100) < density) m.set(i, j, Scalar(static_cast<int>(g() % 7) - 3, 1 + g() % 3));
  return m;
}

}  // namespace

TEST_SUITE("exactlin") {
  TEST_CASE("rationals parse and print canonically") {
    CHECK(format_scalar(parse_scalar("6/4")) == "3/2");
    CHECK(format_scalar(parse_scalar("-10/5")) == "-2");
    CHECK(format_scalar(parse_scalar("0/7")) == "0");
    CHECK_THROWS_AS(parse_scalar(" 3 "), InputError);
    CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
    CHECK_THROWS_AS(parse_scalar("abc"), InputError);
    CHECK_THROWS_AS(parse_scalar(""), InputError);
    CHECK_THROWS_AS(parse_scalar("1.5"), InputError);
  }

  TEST_CASE("sparse matrix arithmetic") {
    SparseMatrix a = SparseMatrix::from_dense({{1, 2}, {0, 3}}, 2);
    SparseMatrix b = SparseMatrix::from_dense({{0, 1}, {1, 0}}, 2);
    CHECK((a * b) == SparseMatrix::from_dense({{2, 1}, {3, 0}}, 2));
    CHECK((a + a) == a.scaled(2));
    CHECK((a - a).is_zero());
    CHECK(a.transpose().get(1, 0) == 2);
    a.set(0, 1, 0);
    CHECK(a.nnz() == 2);
    CHECK(SparseMatrix::identity(3).apply(Vec{1, 2, 3}) == Vec{1, 2, 3});
  }

  TEST_CASE("rank-nullity on random matrices") {
    std::mt19937 g(7);
    for (int t = 0; t < 40; ++t) {
      std::size_t r = 1 + g() % 8, c = 1 + g() % 8;
      auto m = random_matrix(g, r, c, 35);
      auto ki = kernel_image(m);
      CHECK(ki.kernel.size() + ki.image.size() == c);
      CHECK(ki.image.size() == rank(m));
      for (const auto& k : ki.kernel) CHECK(is_zero(m.apply(k)));
      CHECK(rank(m.transpose()) == rank(m));
    }
  }

  TEST_CASE("coordinates solve exactly") {
    Coordinates co({Vec{1, 1, 0}, Vec{0, 1, 1}}, 3);
    auto x = co.solve(Vec{2, 5, 3});
    REQUIRE(x);
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(co.solve(Vec{1, 0, 0}));
  }

  TEST_CASE("homology of a two-term complex") {
    // d: e0 -> e1 on a 3-dim space; homology spanned by e2 and the class of e0 vanishes
    SparseMatrix d_in(3, 3), d_out(3, 3);
    d_in.set(1, 0, 1);
    d_out.set(1, 0, 1);
    auto h = homology(d_in, d_out);
    CHECK(h.dim() == 1);
    CHECK(h.kernel.size() == 2);
    CHECK(h.image.size() == 1);
    auto p = h.project(Vec{0, 5, 2});
    REQUIRE(p.size() == 1);
    CHECK(p[0] != 0);
    SparseMatrix bad(3, 3);
    bad.set(2, 1, 1);
    CHECK_THROWS_AS(homology(d_in, bad), MathError);
  }

  TEST_CASE("block invariants of k[h]/(h^N)-modules") {
    // k[h]/(h^3) (+) k[h]/(h^1): h shifts 0->1->2, kills 2 and 3
    SparseMatrix h(4, 4);
    h.set(1, 0, 1);
    h.set(2, 1, 1);
    auto b = block_invariants({3, h});
    CHECK(b.sizes == std::vector<int>{3, 1});
    CHECK_FALSE(b.is_free(3));
    SparseMatrix f(2, 2);
    f.set(1, 0, 1);
    CHECK(block_invariants({2, f}).is_free(2));
    CHECK_THROWS_AS(block_invariants({1, f}), MathError);
  }
}
