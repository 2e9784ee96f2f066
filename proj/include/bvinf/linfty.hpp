#pragma once

// L-infinity structures in the symmetric presentation: odd graded-symmetric
// brackets m_n acting on a super space W (the parity-reversed underlying
// space). Relations, morphisms, Maurer-Cartan sets over finite test cdgas,
// contractions and homotopy transfer to minimal models.

#include "bvinf/superalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace bvinf {

/// Raised by from_operator when D(1) != 0 (curved structures are not supported).
class CurvedError : public MathError {
 public:
  using MathError::MathError;
};

/// Applies a graded-symmetric multimap to arbitrary arguments. Arguments and
/// values are vectors of length dim*h_order laid out as index k*dim + i for
/// h^k e_i; the map is extended k[h]/(h^N)-linearly.
Vec apply_multimap(const MultiMap& m, const std::vector<int>& parity, int h_order, std::span<const Vec> args);

struct LInftyStructure {
  SuperSpace space;  // the space the brackets act on
  int h_order = 1;   // coefficients in k[h]/(h^h_order)
  std::vector<MultiMap> brackets;  // brackets[n-1] = m_n, n = 1..arity_cap()

  std::size_t dim() const { return space.dim(); }
  std::size_t value_dim() const { return dim() * static_cast<std::size_t>(h_order); }
  int arity_cap() const { return static_cast<int>(brackets.size()); }
  /// Underlying V with W = Pi V.
  SuperSpace underlying() const { return space.reversed(); }
  const MultiMap& bracket(int n) const;
  Vec apply(int n, std::span<const Vec> args) const;
  /// Embedding of a basis element (times h^0).
  Vec basis(std::size_t i) const { return unit_vec(value_dim(), i); }
  /// m_1 as a matrix on the full k-space of dimension value_dim().
  SparseMatrix differential() const;

  static LInftyStructure abelian(SuperSpace space, const SparseMatrix& m1, int arity_cap);
};

MultiMap multimap_from_matrix(const SparseMatrix& m, int parity);

struct RelationReport {
  bool ok = true;
  int failing_arity = 0;
  Key witness;
  Vec residual;
};
/// Checks sum over unshuffles of m_q(m_p(x_S), x_rest) = 0 on all sorted basis
/// tuples of total arity 1..up_to.
RelationReport check_relations(const LInftyStructure& l, int up_to);

/// Derived brackets m_n = derived_map(D, n) on A, n = 1..arity_cap, without validation.
LInftyStructure derived_structure(const Algebra& alg, const LinearOperator& d, int arity_cap);
/// As derived_structure, but requires D odd, D(1) = 0 and D^2 = 0.
LInftyStructure from_operator(const Algebra& alg, const LinearOperator& d, int arity_cap = 5);

struct LInftyMorphism {
  LInftyStructure source;
  LInftyStructure target;
  std::vector<MultiMap> components;  // components[n-1] = f_n, even
};

struct MorphismReport {
  bool ok = true;
  int failing_arity = 0;
  Key witness;
};
MorphismReport check_morphism(const LInftyMorphism& f, int up_to);

/// f_n(a_1..a_n) = a_1 a_2 ... a_n from from_operator(A, D) to the abelian
/// structure with differential D.
LInftyMorphism exp_morphism(const Algebra& alg, const LinearOperator& d, int arity_cap = 5);

/// Finite-dimensional local cdga: the designated ideal of `algebra` is the
/// maximal ideal C_+, d is an odd square-zero derivation killing 1.
struct TestCDGA {
  std::string name;
  Algebra algebra;
  LinearOperator d;

  /// Throws MathError listing the first violated invariant.
  void validate() const;
};
std::vector<TestCDGA> test_cdga_zoo();
const TestCDGA& test_cdga(const std::string& name);

/// (d_C (x) id)(xi) + sum_i 1/i! m_i^C(xi,...,xi) for even xi in C_+ (x) W,
/// laid out as c*dim(W) + w.
Vec mc_residual(const LInftyStructure& l, const TestCDGA& c, const Vec& xi);
/// sum_n 1/n! f_n^C(xi,...,xi).
Vec push_forward(const LInftyMorphism& f, const TestCDGA& c, const Vec& xi);

struct MCCheck {
  bool is_mc = false;
  bool is_cycle = false;
  bool agree() const { return is_mc == is_cycle; }
};
/// Compares the Maurer-Cartan equation for from_operator(A, D) with the cycle
/// condition (d_C + D)(e^xi - 1) = 0 in C (x) A.
MCCheck mc_exponential_check(const Algebra& alg, const LinearOperator& d, const TestCDGA& c, const Vec& xi);
/// d_C (x) id + id (x) D on C (x) A.
SparseMatrix total_differential(const TestCDGA& c, const Algebra& alg, const LinearOperator& d);

/// Strong deformation retract of (W, m_1) onto its homology H:
/// pi iota = id, iota pi - id = m_1 kappa + kappa m_1, kappa^2 = kappa iota = pi kappa = 0.
struct Contraction {
  SuperSpace homology;
  SparseMatrix iota;   // H -> W
  SparseMatrix pi;     // W -> H
  SparseMatrix kappa;  // W -> W, odd
};
Contraction contraction_of(const SuperSpace& space, const SparseMatrix& m1);
/// Empty string when all contraction identities and side conditions hold.
std::string verify_contraction(const Contraction& c, const SparseMatrix& m1);
Contraction identity_contraction(const SuperSpace& space);

/// Minimal model on H by the tree-sum formula, brackets m'_2..m'_up_to (m'_1 = 0).
LInftyStructure transfer(const LInftyStructure& l, const Contraction& c, int up_to);
/// Components of the L-infinity quasi-isomorphism H -> W produced alongside transfer.
LInftyMorphism transfer_with_inclusion(const LInftyStructure& l, const Contraction& c, int up_to);
bool is_homotopy_abelian_up_to(const LInftyStructure& l, int up_to);

}  // namespace bvinf
