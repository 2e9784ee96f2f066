#include "bvinf/commands.hpp"

#include <doctest.h>

using namespace bvinf;

namespace {

const char* kOperator = R"({
  "version": 1, "kind": "algebra+operator", "name": "lap",
  "algebra": {"generators": [{"label": "x", "parity": 0, "exponent": 3}, {"label": "t", "parity": 1, "exponent": 2}]},
  "operator": {"parity": 1, "entries": [[0, 4, "1"], [1, 5, "2"]]}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kOperator;
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("problem") {
  TEST_CASE("fixtures round-trip through canonical JSON") {
    for (const auto& name : fixture_names()) {
      CAPTURE(name);
      auto p = fixture_problem(name);
      auto s = serialize_problem(p);
      CHECK(serialize_problem(parse_problem(s)) == s);
    }
    CHECK_THROWS_AS(fixture_problem("nope"), InputError);
  }

  TEST_CASE("operator problem parses and rebuilds") {
    auto p = parse_problem(kOperator);
    CHECK(p.kind == ProblemKind::AlgebraOperator);
    auto a = p.algebra.build();
    CHECK(a.dim() == 6);
    auto d = p.op.build(a.dim());
    CHECK(d.matrix.get(1, 5) == 2);
    CHECK(p.options.arity_cap == 5);
  }

  TEST_CASE("malformed inputs are input errors") {
    CHECK_THROWS_AS(parse_problem("{"), InputError);
    CHECK_THROWS_AS(parse_problem(with("\"2\"", "\"1/0\"")), InputError);
    CHECK_THROWS_AS(parse_problem(with("\"2\"", "2")), InputError);
    CHECK_THROWS_AS(parse_problem(with("\"version\": 1", "\"version\": 2")), InputError);
    CHECK_THROWS_AS(parse_problem(with("\"name\"", "\"nmae\"")), InputError);
    CHECK_THROWS_AS(parse_problem(with("algebra+operator", "algebra")), InputError);
    CHECK_THROWS_AS(parse_problem(with("\"exponent\": 3", "\"exponent\": -3")), InputError);
  }

  TEST_CASE("out-of-range operator entries are input errors") {
    auto p = parse_problem(with("[1, 5, \"2\"]", "[1, 9, \"2\"]"));
    CHECK_THROWS_AS(p.op.build(p.algebra.build().dim()), InputError);
  }

  TEST_CASE("bv_family_problem round-trips a random family") {
    Rng rng(4);
    for (int i = 0; i < 5; ++i) {
      auto f = random_bv_family(rng, 3);
      auto p = bv_family_problem(f.kind, f.bv);
      auto q = parse_problem(serialize_problem(p));
      auto bv = problem_bv(q);
      CHECK(bv.op.truncation == f.bv.op.truncation);
      for (std::size_t k = 0; k < f.bv.op.components.size(); ++k)
        CHECK(bv.component(k).matrix == f.bv.component(k).matrix);
    }
  }

  TEST_CASE("explicit-basis algebras") {
    Algebra ext = Algebra::from_constants({{"1", "a", "b", "ab"}, {0, 1, 1, 0}}, unit_vec(4, 0),
                                          {{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 0, 1, Scalar(1)},
                                           {0, 2, 2, Scalar(1)}, {2, 0, 2, Scalar(1)}, {0, 3, 3, Scalar(1)},
                                           {3, 0, 3, Scalar(1)}, {1, 2, 3, Scalar(1)}, {2, 1, 3, Scalar(-1)}});
    REQUIRE(check_algebra(ext).ok);
    auto p = operator_problem("ext", ext, LinearOperator::zero(4, 1));
    auto q = parse_problem(serialize_problem(p));
    CHECK(q.algebra.explicit_basis());
    CHECK(check_algebra(q.algebra.build()).ok);
    auto broken = q;
    for (auto& c : broken.algebra.products)
      if (std::get<3>(c) == -1) std::get<3>(c) = 1;  // b a = + ab breaks commutativity
    CHECK_THROWS_AS(broken.algebra.build(), MathError);
  }
}

TEST_SUITE("commands") {
  TEST_CASE("exit codes") {
    auto p = parse_problem(kOperator);
    CHECK(run_command(p, Command::Check).exit_code == kExitOk);
    CHECK(run_command(p, Command::Degeneration).exit_code == kExitInputError);
    RunOverrides bad;
    bad.arity_cap = 0;
    CHECK(run_command(p, Command::Check, bad).exit_code == kExitInputError);
    auto np = fixture_problem("heisenberg");
    np.model = "invariant";
    np.lie_poisson = "@1^@2";
    auto r = run_command(np, Command::Check);
    CHECK(r.exit_code == kExitCheckFailed);
    CHECK(r.machine["message"].get<std::string>().find("[P,P]") != std::string::npos);
  }

  TEST_CASE("D^2 != 0 is a failed check with a relation witness") {
    auto p = parse_problem(with("\"entries\": [[0, 4, \"1\"], [1, 5, \"2\"]]", "\"entries\": [[2, 1, \"1\"], [1, 2, \"1\"]]"));
    auto r = run_command(p, Command::Check);
    CHECK(r.exit_code == kExitCheckFailed);
    CHECK_FALSE(r.machine["result"]["square_zero"].get<bool>());
    CHECK_FALSE(r.machine["result"]["relations"]["ok"].get<bool>());
    CHECK(r.machine["result"]["relations_match_square_zero"].get<bool>());
  }

  TEST_CASE("machine output is deterministic and round-trips") {
    for (const auto& name : fixture_names()) {
      auto p = fixture_problem(name);
      for (auto c : {Command::Check, Command::Brackets, Command::Transfer}) {
        auto a = run_command(p, c), b = run_command(p, c);
        CHECK(render_machine(a) == render_machine(b));
        CHECK(render_machine(parse_report(render_machine(a))) == render_machine(a));
      }
    }
    CHECK_THROWS_AS(parse_report("[]"), InputError);
  }

  TEST_CASE("degeneration report for Heisenberg") {
    auto r = run_command(fixture_problem("heisenberg"), Command::Degeneration);
    CHECK(r.exit_code == kExitOk);
    CHECK(render_human(r).find("free: false, dim 14 vs 16") != std::string::npos);
    CHECK_FALSE(r.machine["result"]["degenerate"].get<bool>());
  }

  TEST_CASE("brackets on the Poisson fixtures") {
    auto r = run_command(fixture_problem("r4-generalized"), Command::Brackets);
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.machine["result"]["brackets"][0]["value"] == "-dx1");
    RunOverrides o;
    o.inputs = "dx1; dx2";
    auto r2 = run_command(fixture_problem("r2-linear-poisson"), Command::Brackets, o);
    CHECK(r2.machine["result"]["brackets"][0]["value"] == "dx1");
  }

  TEST_CASE("mc with a generated and an explicit element") {
    auto p = parse_problem(kOperator);
    for (const auto& c : test_cdga_zoo()) {
      RunOverrides o;
      o.cdga = c.name;
      o.seed = 11;
      auto r = run_command(p, Command::MC, o);
      CHECK(r.exit_code == kExitOk);
      CHECK(r.machine["result"]["agree"].get<bool>());
    }
    RunOverrides o;
    o.element = R"([[1, 1, "1"]])";  // e (x) x in dual numbers
    auto r = run_command(p, Command::MC, o);
    CHECK(r.exit_code == kExitOk);
    o.element = R"([[1, 2, "1"]])";  // odd
    CHECK(run_command(p, Command::MC, o).exit_code == kExitInputError);
    o.element = R"([[1, 2, "1/0"]])";
    CHECK(run_command(p, Command::MC, o).exit_code == kExitInputError);
  }

  TEST_CASE("main theorem verdicts") {
    CHECK(run_command(fixture_problem("abelian3"), Command::MainTheorem).machine["result"]["degenerate"].get<bool>());
    auto r = run_command(fixture_problem("sl2"), Command::MainTheorem);
    CHECK(r.exit_code == kExitOk);
    CHECK_FALSE(r.machine["result"]["homotopy_abelian"].get<bool>());
  }
}
