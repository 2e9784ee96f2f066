#pragma once

// Finite invariant-form models: a Lie algebra g, the CE cochains Lambda(g*)
// with differential d, and a multivector P in Lambda(g) acting through
// L_P = [i_P, d]. The resulting operator family is a BV-infinity algebra
// whenever [P,P] = 0.

#include "bvinf/bvinfty.hpp"
#include "bvinf/polygeom.hpp"

#include <string>
#include <vector>

namespace bvinf {

struct LieConstant {
  int i = 0, j = 0, k = 0;  // [e_i, e_j] = c e_k (0-based)
  Scalar c;
};

struct LieData {
  int dim = 0;
  std::vector<LieConstant> constants;

  /// table[i][j] = [e_i, e_j], antisymmetrized. Throws InputError on bad indices
  /// or a nonzero [e_i, e_i].
  std::vector<std::vector<Vec>> table() const;
  static LieData abelian(int dim);
  static LieData heisenberg();     // [e1,e2] = e3
  static LieData sl2();            // e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
};

/// Empty when the Jacobi identity holds, otherwise a description of the first failure.
std::string jacobi_violation(const LieData& lie);

/// Schouten bracket on Lambda(g): odd variable i stands for e_i.
PolyMultivector lie_schouten(const LieData& lie, const PolyMultivector& a, const PolyMultivector& b);
/// Oracle: sum_{i,j} (-1)^{i+j} [a_i, b_j] ^ a_1..^a_i..a_k ^ b_1..^b_j..b_l on monomials.
PolyMultivector lie_schouten_wedge(const LieData& lie, const PolyMultivector& a, const PolyMultivector& b);
/// ad_x P for x in g (given as a 1-vector).
PolyMultivector lie_adjoint(const LieData& lie, const PolyMultivector& x, const PolyMultivector& p);
bool is_invariant(const LieData& lie, const PolyMultivector& p);

/// g as an L-infinity structure on the odd space Pi g: m_2(e_i, e_j) = [e_i, e_j], all other m_n = 0.
LInftyStructure lie_linfty(const LieData& lie, int arity_cap);

struct InvariantModel {
  LieData lie;
  Algebra algebra;                           // Lambda(theta_1..theta_n)
  LinearOperator d;                          // CE differential
  PolyMultivector p;
  std::vector<PolyMultivector> components;   // components[i] = P_i, an (i+1)-vector
  bool invariant = false;
};

struct InvariantModelResult {
  InvariantModel model;
  BVInfinity bv;
};

/// Operator of i_Q on Lambda(theta) (theta^i dual to e_i).
LinearOperator model_interior(const InvariantModel& m, const PolyMultivector& q);
/// L_Q = i_Q d - (-1)^k d i_Q.
LinearOperator model_lie_derivative(const InvariantModel& m, const PolyMultivector& q);

/// Builds (Lambda g*, d) and D_0 = d, D_i = L_{P_i} with h-truncation `truncation`
/// (raised to deg P if smaller). Throws MathError on Jacobi or Poisson failure or if
/// check_bv rejects the family, InputError on malformed P.
InvariantModelResult invariant_model(const LieData& lie, const PolyMultivector& p, int truncation);

}  // namespace bvinf
