#pragma once

// BV-infinity algebras as operator families: axiom checks, the degeneration
// property over k[h]/(h^N), rescaled L-infinity structures, the
// Chevalley-Eilenberg construction and the degeneration => homotopy abelian test.

#include "bvinf/linfty.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvinf {

struct BVInfinity {
  Algebra algebra;
  HOperator op;

  std::size_t dim() const { return algebra.dim(); }
  LinearOperator component(std::size_t i) const { return op.component(i, dim()); }
};

struct BVReport {
  bool ok = true;
  bool unit_ok = true;         // D(1) = 0 mod h^N
  bool square_zero_ok = true;  // D^2 = 0 mod h^N
  std::vector<std::optional<int>> orders;  // order of D_i, nullopt if above the cap
  std::vector<std::string> violations;
};
/// Checks parity, D(1) = 0, D^2 = 0 mod h^N and order(D_i) <= i+1.
BVReport check_bv(const Algebra& alg, const HOperator& op);

struct DegenerationLevel {
  int truncation = 0;            // N'
  std::size_t homology_dim = 0;  // dim_k H(A (x) k[h]/(h^N'))
  std::size_t base_dim = 0;      // dim_k H(A, D_0)
  BlockInvariants blocks;
  bool free_by_blocks = false;
  bool free_by_dimension = false;
  bool certificates_agree() const { return free_by_blocks == free_by_dimension; }
};

struct DegenerationReport {
  std::vector<DegenerationLevel> levels;
  bool degenerate() const;
  bool certificates_agree() const;
};
/// Homology of (A (x) k[h]/(h^N'), sum h^i D_i) with its h-action for N' = 1..n_max.
DegenerationReport degeneration_check(const BVInfinity& bv, int n_max);
DegenerationLevel degeneration_level(const BVInfinity& bv, int n);

/// E_1 collapse of the h-filtration spectral sequence tested by lifting: for
/// each N' <= n_max, whether every D_0-cycle is the h^0 part of a cycle of
/// sum h^i D_i mod h^N'. Independent of the homology computation above.
std::vector<bool> e1_lift_check(const BVInfinity& bv, int n_max);
bool e1_collapses(const BVInfinity& bv, int n_max);

struct FiberStructures {
  LInftyStructure fiber;     // h = 0 fiber, m_n from D_{n-1}
  LInftyStructure rescaled;  // m_n / h^{n-1} on A[h]/(h^N)
};
/// Derived brackets of D on A[h]/(h^N) divided by h^{n-1}. Throws MathError
/// when a bracket is not divisible or the two computation paths disagree.
FiberStructures rescaled_structure(const BVInfinity& bv, int arity_cap);
/// h = 0 fiber only: m_n = derived_map(D_{n-1}, n).
LInftyStructure fiber_structure(const BVInfinity& bv, int arity_cap);

/// CE chains of an L-infinity structure on a purely odd space: A = S(W) =
/// Lambda(W), D_{i-1} = Delta_i with Delta_i(w_1...w_k) = sum_{|S|=i} eps m_i(w_S) w_rest.
BVInfinity ce_complex(const LInftyStructure& g, int truncation);

struct Verdict {
  bool degenerate = false;
  bool abelian = false;
  bool consistent() const { return !degenerate || abelian; }
  DegenerationReport degeneration;
  std::size_t minimal_dim = 0;
  std::vector<std::size_t> transferred_sizes;  // nonzero entries of m'_n, n = 1..up_to
};
Verdict main_theorem_check(const BVInfinity& bv, int up_to, int n_max);

}  // namespace bvinf
