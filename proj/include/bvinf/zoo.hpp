#pragma once

// Seeded random instances: algebras, operators, BV-infinity families,
// L-infinity structures, Maurer-Cartan elements, multivector fields and
// invariant Poisson models.

#include "bvinf/invariant_model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bvinf {

/// Portable seeded generator (mt19937_64 plus modulo reduction, so streams
/// are identical across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int uniform(int lo, int hi);  // inclusive
  bool chance(int percent) { return uniform(0, 99) < percent; }
  Scalar small_int(int bound) { return Scalar(uniform(-bound, bound)); }
  Scalar small_rational(int bound, int max_den);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1)));
  }

 private:
  std::mt19937_64 g_;
};

/// Random monomial algebra with min_dim <= dimension <= max_dim and at least one odd generator.
Algebra random_algebra(Rng& rng, std::size_t max_dim, std::size_t min_dim = 2);
/// Random even element of the designated ideal.
Vec random_ideal_element(Rng& rng, const Algebra& alg, int parity);
/// Random odd operator (no further conditions).
LinearOperator random_odd_operator(Rng& rng, const Algebra& alg);
/// g D_0 g^{-1}: D_0 pairs non-unit basis elements of opposite parity, g even
/// unitriangular with g(1) = 1. Odd, D^2 = 0, D(1) = 0.
LinearOperator random_square_zero_operator(Rng& rng, const Algebra& alg);
/// Adds odd entries outside the unit column until D^2 != 0 (D(1) = 0 preserved).
LinearOperator perturb_operator(Rng& rng, const Algebra& alg, const LinearOperator& d);

struct NamedLie {
  std::string name;
  LieData lie;
};
std::vector<NamedLie> lie_zoo();
/// Structure constants after a random change of basis.
LieData conjugate_lie(Rng& rng, const LieData& lie);
/// Purely odd L-infinity structure of dimension <= 4 with m_2 from a Lie
/// algebra and, in dimension 4, possibly a random m_4.
LInftyStructure random_odd_linfty(Rng& rng, int arity_cap);

/// Base cdga (A, D_0) with D_0 a derivation: CE algebras and Koszul-type examples.
struct BaseCDGA {
  std::string name;
  Algebra algebra;
  LinearOperator d;
};
std::vector<BaseCDGA> base_cdga_zoo();
/// Random even operator of order <= 2 with X(1) = 0.
LinearOperator random_gauge_generator(Rng& rng, const Algebra& alg);
/// D_k = ad_X^k(D_0)/k!: the h-gauge transform e^{hX} D_0 e^{-hX}. Always degenerate.
BVInfinity gauge_family(const Algebra& alg, const LinearOperator& d0, const LinearOperator& x, int truncation);
BVInfinity random_gauge_family(Rng& rng, int truncation);

/// Mixed random BV-infinity families: gauge families, CE complexes of random
/// Lie and L-infinity structures, and invariant models.
struct NamedFamily {
  std::string kind;
  BVInfinity bv;
};
NamedFamily random_bv_family(Rng& rng, int truncation);

/// Random MC candidate in C_+ (x) A: with `cycle`, xi = log(1 + z) for a random
/// even cycle z of d_C + D, otherwise a random even element.
Vec random_mc_candidate(Rng& rng, const TestCDGA& c, const Algebra& alg, const LinearOperator& d, bool cycle);

/// Random k-vector on R^n with coefficients of degree <= max_coeff_degree.
PolyMultivector random_k_vector(Rng& rng, int n, int k, int max_coeff_degree);

struct InvariantCase {
  std::string name;
  LieData lie;
  PolyMultivector p;
};
/// Lie algebras with multivectors P satisfying [P,P] = 0.
std::vector<InvariantCase> invariant_cases(Rng& rng, std::size_t count);

}  // namespace bvinf
