#include "bvinf/invariant_model.hpp"

#include <bit>

namespace bvinf {

namespace {

SuperPoly mono(int n, std::uint32_t mask, const Scalar& c) {
  SuperPoly p(n);
  p.add_term(Monomial{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), mask}, c);
  return p;
}

SuperPoly vec_to_poly(int n, const Vec& v) {
  SuperPoly p(n);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) p = p + mono(n, 1u << k, v[k]);
  return p;
}

void check_multivector(const LieData& lie, const PolyMultivector& p) {
  if (p.nvars() != lie.dim && !p.is_zero()) throw InputError("multivector has the wrong number of variables");
  if (p.max_degree() > 0) throw InputError("multivectors in Lambda(g) may not contain x variables");
}

std::uint32_t mask_of(const std::vector<int>& exps) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i]) m |= 1u << i;
  return m;
}

}  // namespace

std::vector<std::vector<Vec>> LieData::table() const {
  if (dim < 0 || dim > 12) throw InputError("Lie algebra dimension must be in 0..12");
  const auto n = static_cast<std::size_t>(dim);
  std::vector<std::vector<Vec>> t(n, std::vector<Vec>(n, zero_vec(n)));
  for (const auto& s : constants) {
    if (s.i < 0 || s.j < 0 || s.k < 0 || s.i >= dim || s.j >= dim || s.k >= dim)
      throw InputError("structure constant index out of range");
    if (s.c == 0) continue;
    if (s.i == s.j) throw InputError("[e_i, e_i] must vanish in a Lie algebra");
    auto i = static_cast<std::size_t>(s.i), j = static_cast<std::size_t>(s.j), k = static_cast<std::size_t>(s.k);
    t[i][j][k] += s.c;
    t[j][i][k] -= s.c;
  }
  return t;
}

LieData LieData::abelian(int dim) { return LieData{dim, {}}; }

LieData LieData::heisenberg() { return LieData{3, {{0, 1, 2, Scalar(1)}}}; }

LieData LieData::sl2() {
  return LieData{3, {{0, 1, 2, Scalar(1)}, {2, 0, 0, Scalar(2)}, {2, 1, 1, Scalar(-2)}}};
}

std::string jacobi_violation(const LieData& lie) {
  auto t = lie.table();
  const auto n = static_cast<std::size_t>(lie.dim);
  auto br = [&](const Vec& a, const Vec& b) {
    Vec r = zero_vec(n);
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0)
        for (std::size_t j = 0; j < n; ++j)
          if (b[j] != 0) axpy(r, a[i] * b[j], t[i][j]);
    return r;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec s = br(unit_vec(n, i), t[j][k]);
        axpy(s, 1, br(unit_vec(n, j), t[k][i]));
        axpy(s, 1, br(unit_vec(n, k), t[i][j]));
        if (!is_zero(s))
          return "Jacobi fails for (e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ", e" +
                 std::to_string(k + 1) + ")";
      }
  return {};
}

PolyMultivector lie_schouten(const LieData& lie, const PolyMultivector& a, const PolyMultivector& b) {
  check_multivector(lie, a);
  check_multivector(lie, b);
  const int n = lie.dim;
  auto t = lie.table();
  PolyMultivector r(n);
  if (a.is_zero() || b.is_zero()) return r;
  // sum_{i,j} (a <-d_i) [e_i, e_j] (d_j-> b)
  for (int i = 0; i < n; ++i) {
    auto ai = a.d_odd_right(i);
    if (ai.is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      const Vec& c = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (is_zero(c)) continue;
      auto bj = b.d_odd_left(j);
      if (bj.is_zero()) continue;
      r = r + ai * vec_to_poly(n, c) * bj;
    }
  }
  return r;
}

PolyMultivector lie_schouten_wedge(const LieData& lie, const PolyMultivector& a, const PolyMultivector& b) {
  check_multivector(lie, a);
  check_multivector(lie, b);
  const int n = lie.dim;
  auto t = lie.table();
  PolyMultivector r(n);
  auto bits = [](std::uint32_t m) {
    std::vector<int> v;
    for (; m; m &= m - 1) v.push_back(std::countr_zero(m));
    return v;
  };
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      auto ia = bits(ma.odd), ib = bits(mb.odd);
      for (std::size_t i = 0; i < ia.size(); ++i)
        for (std::size_t j = 0; j < ib.size(); ++j) {
          const Vec& c = t[static_cast<std::size_t>(ia[i])][static_cast<std::size_t>(ib[j])];
          if (is_zero(c)) continue;
          // positions are 1-based in the sign (-1)^{i+j}
          SuperPoly term = vec_to_poly(n, c).scaled(ca * cb * parity_sign(static_cast<int>(i + j)));
          for (std::size_t k = 0; k < ia.size(); ++k)
            if (k != i) term = term * mono(n, 1u << ia[k], 1);
          for (std::size_t k = 0; k < ib.size(); ++k)
            if (k != j) term = term * mono(n, 1u << ib[k], 1);
          r = r + term;
        }
    }
  return r;
}

PolyMultivector lie_adjoint(const LieData& lie, const PolyMultivector& x, const PolyMultivector& p) {
  return lie_schouten(lie, x, p);
}

bool is_invariant(const LieData& lie, const PolyMultivector& p) {
  for (int i = 0; i < lie.dim; ++i)
    if (!lie_adjoint(lie, mono(lie.dim, 1u << i, 1), p).is_zero()) return false;
  return true;
}

LInftyStructure lie_linfty(const LieData& lie, int arity_cap) {
  auto t = lie.table();
  const auto n = static_cast<std::size_t>(lie.dim);
  LInftyStructure l;
  for (std::size_t i = 0; i < n; ++i) {
    l.space.labels.push_back("e" + std::to_string(i + 1));
    l.space.parity.push_back(1);
  }
  for (int a = 1; a <= arity_cap; ++a) l.brackets.push_back(MultiMap{a, 1, n, {}});
  if (arity_cap >= 2)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!is_zero(t[i][j]))
          l.brackets[1].table.emplace(Key{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j)}, t[i][j]);
  return l;
}

LinearOperator model_interior(const InvariantModel& m, const PolyMultivector& q) {
  auto qp = q.parity();
  if (!qp) throw InputError("interior: multivector must be homogeneous in parity");
  const Algebra& a = m.algebra;
  const int n = m.lie.dim;
  LinearOperator op = LinearOperator::zero(a.dim(), *qp);
  for (std::size_t col = 0; col < a.dim(); ++col) {
    auto w = mono(n, mask_of(a.monomials()[col]), 1);
    auto r = interior(q, w);
    for (const auto& [mm, c] : r.terms()) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = (mm.odd >> i) & 1;
      op.matrix.add(a.monomial_index(e).value(), col, c);
    }
  }
  return op;
}

LinearOperator model_lie_derivative(const InvariantModel& m, const PolyMultivector& q) {
  LinearOperator r = LinearOperator::zero(m.algebra.dim(), 1);
  for (int k = 0; k <= q.max_odd_degree(); ++k) {
    auto qk = q.odd_component(k);
    if (qk.is_zero()) continue;
    auto l = graded_commutator(model_interior(m, qk), m.d);
    if (l.parity != 1) throw InputError("Lie derivative along an odd multivector is not odd");
    r = r + l;
  }
  return r;
}

InvariantModelResult invariant_model(const LieData& lie, const PolyMultivector& p_in, int truncation) {
  if (auto err = jacobi_violation(lie); !err.empty()) throw MathError("invariant_model: " + err);
  PolyMultivector p = p_in.is_zero() ? PolyMultivector(lie.dim) : p_in;
  check_multivector(lie, p);
  for (const auto& [m, c] : p.terms()) {
    int k = m.odd_degree();
    if (k < 2) throw InputError("invariant_model: P may not contain scalars or vectors");
    if (k % 2) throw InputError("invariant_model: P must be even (multivectors of even degree only)");
  }
  auto sq = lie_schouten(lie, p, p);
  if (!sq.is_zero()) throw MathError("invariant_model: [P,P] = " + format_multivector(sq) + " != 0");

  InvariantModelResult out;
  InvariantModel& m = out.model;
  m.lie = lie;
  m.p = p;
  m.invariant = is_invariant(lie, p);
  const int n = lie.dim;
  std::vector<Generator> gens;
  for (int i = 0; i < n; ++i) gens.push_back({"t" + std::to_string(i + 1), 1, 2});
  m.algebra = Algebra::monomial(gens);
  const Algebra& a = m.algebra;
  auto t = lie.table();
  std::vector<Vec> gv;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    gv.push_back(a.basis(a.monomial_index(e).value()));
  }
  // d theta^k = - sum_{i<j} c^k_ij theta^i theta^j
  std::vector<Vec> values(static_cast<std::size_t>(n), zero_vec(a.dim()));
  for (std::size_t i = 0; i < gv.size(); ++i)
    for (std::size_t j = i + 1; j < gv.size(); ++j)
      for (std::size_t k = 0; k < gv.size(); ++k)
        if (t[i][j][k] != 0) axpy(values[k], -t[i][j][k], a.mul(gv[i], gv[j]));
  m.d = derivation_from_generators(a, values, 1);
  if (!compose(m.d, m.d).is_zero()) throw MathError("invariant_model: d^2 != 0");

  const int top = p.max_odd_degree();
  out.bv.algebra = a;
  out.bv.op.components.push_back(m.d);
  m.components.push_back(PolyMultivector(n));
  for (int i = 1; i + 1 <= top; ++i) {
    m.components.push_back(p.odd_component(i + 1));
    out.bv.op.components.push_back(model_lie_derivative(m, m.components.back()));
  }
  out.bv.op.truncation = std::max<int>(truncation, static_cast<int>(out.bv.op.components.size()));
  auto rep = check_bv(a, out.bv.op);
  if (!rep.ok) throw MathError("invariant_model: " + rep.violations.front());
  return out;
}

}  // namespace bvinf
