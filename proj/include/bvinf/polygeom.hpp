#pragma once

// Polynomial multivector fields and differential forms on affine n-space:
// Schouten bracket (direct and odd-coordinate oracle), interior products,
// de Rham differential, Lie derivatives, generalized Poisson structures and
// higher Koszul brackets.

#include "bvinf/superalg.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bvinf {

/// Monomial in n even variables x_i and n odd variables (xi_i for multivectors,
/// dx_i for forms). Odd variables are stored as an ascending bitmask.
struct Monomial {
  std::vector<std::uint8_t> exps;
  std::uint32_t odd = 0;

  int degree() const;       // polynomial degree in x
  int odd_degree() const;   // number of odd variables
  auto operator<=>(const Monomial&) const = default;
};

/// Polynomial in (x_1..x_n, odd_1..odd_n) with rational coefficients; no zero terms.
class SuperPoly {
 public:
  SuperPoly() = default;
  explicit SuperPoly(int nvars) : n_(nvars) {}
  static SuperPoly constant(int nvars, const Scalar& c);
  static SuperPoly x(int nvars, int i);
  static SuperPoly odd(int nvars, int i);

  int nvars() const { return n_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Monomial& m, const Scalar& c);

  SuperPoly operator+(const SuperPoly& o) const;
  SuperPoly operator-(const SuperPoly& o) const;
  SuperPoly operator*(const SuperPoly& o) const;  // super-commutative product
  SuperPoly scaled(const Scalar& s) const;
  bool operator==(const SuperPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  SuperPoly d_x(int i) const;         // d/dx_i
  SuperPoly d_odd_left(int i) const;  // left derivative in the i-th odd variable
  SuperPoly d_odd_right(int i) const;
  /// Component with exactly k odd variables.
  SuperPoly odd_component(int k) const;
  /// Parity (odd degree mod 2) of a homogeneous element; nullopt if mixed. Zero is even.
  std::optional<int> parity() const;
  int max_odd_degree() const;
  int max_degree() const;

  std::string to_string(const std::string& odd_prefix) const;

 private:
  int n_ = 0;
  std::map<Monomial, Scalar> terms_;
};

/// Multivector fields: odd variable i stands for d/dx_i. Forms: odd variable i is dx_i.
using PolyMultivector = SuperPoly;
using PolyForm = SuperPoly;

/// Parses sums of products of rationals, x<i>, dx<i> and @<i> (1-based) with
/// '*' or '^' as the (super-commutative) product, '+', '-', parentheses.
/// Forms may not contain @, multivectors may not contain dx. Throws InputError.
SuperPoly parse_expression(const std::string& text, int nvars, bool multivector);
std::string format_multivector(const PolyMultivector& p);
std::string format_form(const PolyForm& p);

/// Schouten bracket by the Gerstenhaber recursion on wedge atoms.
PolyMultivector schouten(const PolyMultivector& a, const PolyMultivector& b);
/// Independent oracle: odd Poisson bracket in (x, xi) coordinates.
PolyMultivector schouten_oracle(const PolyMultivector& a, const PolyMultivector& b);

/// i_{f d_{i1}^...^d_{ik}} = f * iota_{i1} o ... o iota_{ik}.
PolyForm interior(const PolyMultivector& q, const PolyForm& w);
PolyForm derham_d(const PolyForm& w);
/// L_Q = i_Q d - (-1)^k d i_Q on each k-vector component.
PolyForm lie_derivative(const PolyMultivector& q, const PolyForm& w);

struct PoissonCertificate {
  bool poisson = false;
  bool oracle_agrees = false;
  bool degreewise = false;       // sum_{i+j=m} [P_i, P_j] = 0 for every m
  PolyMultivector square;        // [P,P]
  std::string first_nonzero;     // empty when Poisson
  std::vector<int> components;   // i with P_i != 0 (P_i an (i+1)-vector)
};
/// Throws InputError unless P is even with components of multivector degree >= 2.
PoissonCertificate check_poisson(const PolyMultivector& p);
/// P_i: the (i+1)-vector component.
PolyMultivector poisson_component(const PolyMultivector& p, int i);

/// All monomial forms of polynomial degree <= degree_cap.
std::vector<PolyForm> monomial_forms(int nvars, int degree_cap);

/// Memoized action of L_Q on forms.
class KoszulOperator {
 public:
  explicit KoszulOperator(PolyMultivector q) : q_(std::move(q)) {}
  PolyForm apply(const PolyForm& w) const;
  PolyForm apply_monomial(const Monomial& m) const;
  const PolyMultivector& field() const { return q_; }

 private:
  PolyMultivector q_;
  mutable std::map<Monomial, PolyForm> memo_;
};

struct OrderCertificate {
  bool ok = true;
  int claimed = 0;               // order bound tested (k for a k-vector)
  std::size_t tuples = 0;        // generator tuples of size claimed+1
  std::size_t forms = 0;         // test forms
  std::string witness;           // first nonvanishing commutator, if any
};
/// Verifies that every (order+1)-fold commutator of L_Q with the generators
/// x_i, dx_i vanishes on all monomial forms of polynomial degree <= degree_cap.
OrderCertificate koszul_order_check(const PolyMultivector& q, int order, int degree_cap);

/// [[..[L, w_1]..], w_n](1) for homogeneous forms.
PolyForm derived_form_bracket(const std::function<PolyForm(const PolyForm&)>& op, int op_parity,
                              const std::vector<PolyForm>& inputs);
/// m_n(w_1..w_n) from D_{n-1} = L_{P_{n-1}} (D_0 = d). Throws MathError if P is not Poisson.
PolyForm koszul_brackets(const PolyMultivector& p, int n, const std::vector<PolyForm>& inputs);

/// (d + h L_{P_1} + h^2 L_{P_2} + ...)^2 = 0 mod h^N on monomial forms of degree <= degree_cap.
bool dsquared_check(const PolyMultivector& p, int degree_cap, int truncation);

}  // namespace bvinf
