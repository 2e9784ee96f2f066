#pragma once

// Finite-dimensional super-commutative algebras, operators on them, the
// differential-operator order filtration and higher derived maps.

#include "bvinf/exactlin.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace bvinf {

inline int parity_sign(int exponent) { return (exponent & 1) ? -1 : 1; }

struct SuperSpace {
  std::vector<std::string> labels;
  std::vector<int> parity;  // 0 even, 1 odd

  std::size_t dim() const { return parity.size(); }
  /// Parity reversion: same labels, all parities flipped.
  SuperSpace reversed() const;
  /// Throws InputError on duplicate labels or parities outside {0,1}.
  void validate() const;
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;
using StructureConstant = std::tuple<std::size_t, std::size_t, std::size_t, Scalar>;

/// Generator of a monomial algebra: x^exponent = 0. Odd generators square to zero.
struct Generator {
  std::string label;
  int parity = 0;
  int exponent = 2;
};

/// Unital super-commutative algebra given by structure constants
/// e_i * e_j = sum_k c_ij^k e_k, with an optional nilpotent ideal spanned by a
/// subset of the basis.
class Algebra {
 public:
  Algebra() = default;
  Algebra(SuperSpace space, Vec unit, std::vector<std::vector<SparseVec>> table);

  static Algebra from_constants(SuperSpace space, Vec unit, const std::vector<StructureConstant>& constants);
  /// Free super-commutative algebra on the generators modulo g^exponent; the
  /// augmentation ideal is designated. Basis = monomials, unit first.
  static Algebra monomial(const std::vector<Generator>& generators);
  /// Q[x]/(x^n) and the exterior algebra on k odd generators.
  static Algebra truncated_polynomial(int n, const std::string& var = "x");
  static Algebra exterior(int k, const std::string& prefix = "t");

  const SuperSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int parity(std::size_t i) const { return space_.parity[i]; }
  const Vec& unit() const { return unit_; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i][j]; }

  Vec mul(const Vec& a, const Vec& b) const;
  /// e_i * v
  Vec mul_basis(std::size_t i, const Vec& v) const;
  SparseMatrix left_mult(const Vec& a) const;
  /// Parity of a homogeneous element; nullopt for mixed elements. Zero is even.
  std::optional<int> parity_of(const Vec& v) const;
  Vec basis(std::size_t i) const { return unit_vec(dim(), i); }

  bool has_ideal() const { return nilpotency_ > 0; }
  const std::vector<std::size_t>& ideal() const { return ideal_; }
  int nilpotency() const { return nilpotency_; }
  bool in_ideal(const Vec& v) const;
  /// Designates the ideal spanned by the given basis vectors with I^nilpotency = 0.
  Algebra with_ideal(std::vector<std::size_t> ideal, int nilpotency) const;

  /// Monomial metadata (empty for algebras not built by monomial()).
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<std::vector<int>>& monomials() const { return monomials_; }
  std::optional<std::size_t> monomial_index(const std::vector<int>& exps) const;

 private:
  SuperSpace space_;
  Vec unit_;
  std::vector<std::vector<SparseVec>> table_;
  std::vector<std::size_t> ideal_;
  int nilpotency_ = 0;
  std::vector<Generator> generators_;
  std::vector<std::vector<int>> monomials_;
};

/// Graded tensor product C (x) A with basis index i*dim(A)+j and
/// (c (x) a)(c' (x) a') = (-1)^{|a||c'|} cc' (x) aa'. The ideal is I_C (x) A.
Algebra tensor(const Algebra& c, const Algebra& a);

struct AlgebraReport {
  bool ok = true;
  std::string failure;                      // empty when ok
  std::vector<std::size_t> witness;         // first failing basis tuple
};
AlgebraReport check_algebra(const Algebra& alg);

struct LinearOperator {
  int parity = 0;
  SparseMatrix matrix;

  std::size_t dim() const { return matrix.cols(); }
  Vec apply(const Vec& v) const { return matrix.apply(v); }
  bool is_zero() const { return matrix.is_zero(); }
  static LinearOperator zero(std::size_t n, int parity) { return {parity, SparseMatrix(n, n)}; }
  /// True if every entry maps a basis element to one of parity |col| + parity.
  bool parity_consistent(const SuperSpace& space) const;
};

LinearOperator compose(const LinearOperator& x, const LinearOperator& y);
LinearOperator operator+(const LinearOperator& x, const LinearOperator& y);
LinearOperator scaled(const LinearOperator& x, const Scalar& s);
/// Graded commutator XY - (-1)^{|X||Y|} YX.
LinearOperator graded_commutator(const LinearOperator& x, const LinearOperator& y);
/// [D, a] = D o a - (-1)^{|D||a|} a o D for homogeneous a.
LinearOperator commutator(const Algebra& alg, const LinearOperator& d, const Vec& a);
LinearOperator multiplication(const Algebra& alg, const Vec& a);
/// Derivation of a monomial algebra with prescribed values on the generators,
/// extended by the graded Leibniz rule. Throws MathError if the values are
/// incompatible with the defining relations g^exponent = 0.
LinearOperator derivation_from_generators(const Algebra& alg, const std::vector<Vec>& values, int parity);

/// Smallest n <= cap such that every (n+1)-fold iterated commutator with basis
/// elements vanishes; nullopt means the order exceeds cap.
std::optional<int> operator_order(const Algebra& alg, const LinearOperator& d, int cap);

/// Sorted basis-index tuple (a multiset; odd indices never repeat).
using Key = std::vector<std::uint16_t>;

/// All sorted tuples of size n over the basis, skipping repeated odd entries.
std::vector<Key> multisets(const std::vector<int>& parity, int n);
/// Sorts a tuple of basis indices in place, returning the Koszul sign of the
/// permutation, or 0 when an odd index repeats.
int sort_with_sign(Key& key, const std::vector<int>& parity);
/// Koszul sign of listing the elements at `order` (a permutation of 0..n-1).
int koszul_sign(const std::vector<int>& parities, const std::vector<std::size_t>& order);

/// Graded-symmetric multilinear map stored on sorted basis tuples. Values have
/// length out_dim (for k[h]/(h^N)-linear maps, out_dim = dim * N).
struct MultiMap {
  int arity = 0;
  int parity = 1;
  std::size_t out_dim = 0;
  std::map<Key, Vec> table;  // nonzero values only

  const Vec* find(const Key& key) const {
    auto it = table.find(key);
    return it == table.end() ? nullptr : &it->second;
  }
  bool is_zero() const { return table.empty(); }
};

/// [[..[D, e_{k1}]..], e_{kn}](1) for basis elements.
Vec derived_value(const Algebra& alg, const LinearOperator& d, std::span<const std::uint16_t> args);
MultiMap derived_map(const Algebra& alg, const LinearOperator& d, int n);
/// derived_map restricted to the given sorted keys of size n.
MultiMap derived_map_on(const Algebra& alg, const LinearOperator& d, int n, std::vector<Key> keys);
/// Order computed as the smallest n with derived_map(D, n+1) = 0.
std::optional<int> order_via_derived_maps(const Algebra& alg, const LinearOperator& d, int cap);

/// Truncated formal family D = D_0 + h D_1 + ... + h^K D_K acting on A[h]/(h^N).
struct HOperator {
  int truncation = 1;
  std::vector<LinearOperator> components;

  /// D_i, or the zero operator beyond K.
  LinearOperator component(std::size_t i, std::size_t dim) const;
  /// Matrix on A (x) k[h]/(h^n) with basis index k*dim + i for h^k e_i.
  SparseMatrix total_matrix(std::size_t dim, int n) const;
};

/// Exponential and logarithm in the designated nilpotent ideal.
Vec exp(const Algebra& alg, const Vec& a);
Vec log(const Algebra& alg, const Vec& b);

/// e^{-ad(a)}(D) = sum_k (1/k!) [..[D,a]..,a] for even a in the ideal.
LinearOperator exp_neg_ad(const Algebra& alg, const LinearOperator& d, const Vec& a);
/// D o e^a == e^a o e^{-ad(a)}(D).
bool exp_conjugation_check(const Algebra& alg, const LinearOperator& d, const Vec& a);

}  // namespace bvinf
