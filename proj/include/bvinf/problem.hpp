#pragma once

// Versioned JSON problem files and the bundled fixtures.

#include "bvinf/zoo.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bvinf {

inline constexpr int kProblemVersion = 1;

struct Options {
  int arity_cap = 5;
  int degree_cap = 6;
  int n_max = 4;
  std::uint64_t seed = 0;
};

using MatrixEntry = std::tuple<std::size_t, std::size_t, Scalar>;  // (row, col, value)

struct AlgebraSpec {
  // Either generators (monomial algebra) or an explicit basis with products.
  std::vector<Generator> generators;
  std::vector<std::string> labels;
  std::vector<int> parity;
  std::size_t unit = 0;
  std::vector<StructureConstant> products;

  bool explicit_basis() const { return generators.empty(); }
  /// Builds the algebra; throws MathError if the axioms fail.
  Algebra build() const;
};

struct OperatorSpec {
  int parity = 1;
  std::vector<MatrixEntry> entries;
  LinearOperator build(std::size_t dim) const;
};

struct HigherBracket {
  std::vector<std::size_t> inputs;
  std::size_t output = 0;
  Scalar value;
};

enum class ProblemKind { AlgebraOperator, BVFamily, LieData, PoissonGeometry };
std::string kind_name(ProblemKind k);

struct Problem {
  int version = kProblemVersion;
  ProblemKind kind = ProblemKind::AlgebraOperator;
  std::string name;
  Options options;

  // algebra+operator, bv-family
  AlgebraSpec algebra;
  OperatorSpec op;                       // algebra+operator
  std::vector<OperatorSpec> components;  // bv-family: D_0, D_1, ...
  int truncation = 0;                    // bv-family / lie-data; 0 = automatic

  // lie-data
  std::string model = "ce";  // "ce" or "invariant"
  LieData lie;
  std::vector<HigherBracket> higher;  // extra m_n (n >= 3) for the ce model
  std::string lie_poisson;            // invariant model: P in Lambda(g)

  // poisson-geometry
  int dim = 0;
  std::string poisson;

  // brackets inputs: basis indices (as decimal strings) or form expressions
  std::vector<std::string> inputs;

  // Maurer-Cartan element in C (x) A: (c, a, value)
  std::string mc_cdga;
  std::vector<MatrixEntry> mc_element;
};

/// Throws InputError on malformed JSON, schema violations or bad rationals.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);
/// Canonical JSON (sorted keys, canonical rationals, all options present).
std::string serialize_problem(const Problem& p);

std::vector<std::string> fixture_names();
/// Throws InputError for unknown names.
Problem fixture_problem(const std::string& name);

/// Derived objects. Throw InputError / MathError on invalid data.
PolyMultivector problem_poisson(const Problem& p);
LInftyStructure problem_lie_linfty(const Problem& p, int arity_cap);
int problem_truncation(const Problem& p);
BVInfinity problem_bv(const Problem& p);

/// Problems describing an existing algebra with an operator or a family.
AlgebraSpec algebra_spec(const Algebra& alg);
OperatorSpec operator_spec(const LinearOperator& d);
Problem operator_problem(const std::string& name, const Algebra& alg, const LinearOperator& d);
Problem bv_family_problem(const std::string& name, const BVInfinity& bv);

}  // namespace bvinf
