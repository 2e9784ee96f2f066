#include "bvinf/bvinfty.hpp"

#include <algorithm>

namespace bvinf {

BVReport check_bv(const Algebra& alg, const HOperator& op) {
  BVReport rep;
  const std::size_t dim = alg.dim();
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (op.truncation < 1) {
    fail("truncation order must be >= 1");
    return rep;
  }
  if (op.components.size() > static_cast<std::size_t>(op.truncation))
    fail("more components than the truncation order allows (K < N required)");
  for (std::size_t i = 0; i < op.components.size(); ++i) {
    const auto& d = op.components[i];
    if (d.matrix.rows() != dim || d.matrix.cols() != dim) {
      fail("D_" + std::to_string(i) + " has the wrong shape");
      return rep;
    }
    if (d.parity != 1 || !d.parity_consistent(alg.space())) fail("D_" + std::to_string(i) + " is not odd");
  }
  SparseMatrix m = op.total_matrix(dim, op.truncation);
  Vec one = zero_vec(m.cols());
  for (std::size_t i = 0; i < dim; ++i) one[i] = alg.unit()[i];
  if (!is_zero(m.apply(one))) {
    rep.unit_ok = false;
    fail("D(1) != 0 mod h^N");
  }
  if (!(m * m).is_zero()) {
    rep.square_zero_ok = false;
    fail("D^2 != 0 mod h^N");
  }
  for (std::size_t i = 0; i < op.components.size(); ++i) {
    auto ord = operator_order(alg, op.components[i], static_cast<int>(i) + 1);
    rep.orders.push_back(ord);
    if (!ord) fail("D_" + std::to_string(i) + " has order above " + std::to_string(i + 1));
  }
  return rep;
}

// ---------------------------------------------------------------------------

bool DegenerationReport::degenerate() const {
  return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.free_by_blocks; });
}

bool DegenerationReport::certificates_agree() const {
  return std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.certificates_agree(); });
}

DegenerationLevel degeneration_level(const BVInfinity& bv, int n) {
  const std::size_t dim = bv.dim();
  DegenerationLevel lvl;
  lvl.truncation = n;
  SparseMatrix m = bv.op.total_matrix(dim, n);
  SubquotientSpace h = homology(m, m);
  lvl.homology_dim = h.dim();
  auto d0 = bv.component(0).matrix;
  lvl.base_dim = homology(d0, d0).dim();

  const std::size_t total = dim * static_cast<std::size_t>(n);
  SparseMatrix action(h.dim(), h.dim());
  for (std::size_t j = 0; j < h.section.size(); ++j) {
    Vec shifted = zero_vec(total);
    for (std::size_t t = 0; t + dim < total; ++t) shifted[t + dim] = h.section[j][t];
    Vec c = h.project(shifted);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) action.set(i, j, c[i]);
  }
  lvl.blocks = block_invariants(TruncModule{n, std::move(action)});
  lvl.free_by_blocks = lvl.blocks.is_free(n);
  lvl.free_by_dimension = lvl.homology_dim == static_cast<std::size_t>(n) * lvl.base_dim;
  return lvl;
}

DegenerationReport degeneration_check(const BVInfinity& bv, int n_max) {
  auto rep = check_bv(bv.algebra, bv.op);
  if (!rep.ok) throw MathError("degeneration_check: not a BV-infinity algebra: " + rep.violations.front());
  if (n_max > bv.op.truncation)
    throw MathError("degeneration_check: N_max exceeds the truncation order of the operator family");
  DegenerationReport out;
  for (int n = 1; n <= n_max; ++n) out.levels.push_back(degeneration_level(bv, n));
  return out;
}

std::vector<bool> e1_lift_check(const BVInfinity& bv, int n_max) {
  const std::size_t dim = bv.dim();
  auto d0 = bv.component(0).matrix;
  auto base = kernel_image(d0);
  std::vector<bool> out;
  for (int n = 1; n <= n_max; ++n) {
    auto ker = kernel_image(bv.op.total_matrix(dim, n)).kernel;
    std::vector<Vec> span = base.image;
    for (const auto& v : ker) span.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim));
    out.push_back(rank(std::move(span)) == base.kernel.size());
  }
  return out;
}

bool e1_collapses(const BVInfinity& bv, int n_max) {
  auto v = e1_lift_check(bv, n_max);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------------------

LInftyStructure fiber_structure(const BVInfinity& bv, int arity_cap) {
  LInftyStructure l;
  l.space = bv.algebra.space();
  for (int n = 1; n <= arity_cap; ++n)
    l.brackets.push_back(derived_map(bv.algebra, bv.component(static_cast<std::size_t>(n - 1)), n));
  return l;
}

FiberStructures rescaled_structure(const BVInfinity& bv, int arity_cap) {
  auto rep = check_bv(bv.algebra, bv.op);
  if (!rep.ok) throw MathError("rescaled_structure: not a BV-infinity algebra: " + rep.violations.front());
  const std::size_t dim = bv.dim();
  const int N = bv.op.truncation;
  const std::size_t nn = static_cast<std::size_t>(N);
  Algebra t = tensor(Algebra::truncated_polynomial(N, "h"), bv.algebra);
  LinearOperator dt{1, bv.op.total_matrix(dim, N)};

  FiberStructures out;
  out.fiber = fiber_structure(bv, arity_cap);
  out.rescaled.space = bv.algebra.space();
  out.rescaled.h_order = N;
  for (int n = 1; n <= arity_cap; ++n) {
    auto keys = multisets(bv.algebra.space().parity, n);
    // Path 1: derived brackets of D itself on A[h]/(h^N).
    MultiMap full = derived_map_on(t, dt, n, keys);
    // Path 2: sum_i h^i derived brackets of D_i on A.
    std::vector<MultiMap> parts;
    for (std::size_t i = 0; i < nn; ++i) parts.push_back(derived_map(bv.algebra, bv.component(i), n));

    MultiMap res{n, 1, dim * nn, {}};
    const std::size_t shift = static_cast<std::size_t>(n - 1);
    for (const auto& key : keys) {
      Vec f = full.find(key) ? *full.find(key) : zero_vec(dim * nn);
      Vec g = zero_vec(dim * nn);
      for (std::size_t i = 0; i < nn; ++i)
        if (const Vec* v = parts[i].find(key))
          for (std::size_t r = 0; r < dim; ++r) g[i * dim + r] = (*v)[r];
      if (f != g) throw MathError("rescaled_structure: derived brackets of D and of its components disagree");
      Vec q = zero_vec(dim * nn);
      for (std::size_t k = 0; k < nn; ++k)
        for (std::size_t r = 0; r < dim; ++r) {
          const Scalar& x = f[k * dim + r];
          if (x == 0) continue;
          if (k < shift)
            throw MathError("rescaled_structure: m_" + std::to_string(n) + " is not divisible by h^" +
                            std::to_string(n - 1));
          q[(k - shift) * dim + r] = x;
        }
      // h^0 part of the rescaled bracket is the fiber bracket.
      const Vec* fib = out.fiber.bracket(n).find(key);
      for (std::size_t r = 0; r < dim; ++r)
        if (q[r] != (fib ? (*fib)[r] : Scalar(0)))
          throw MathError("rescaled_structure: h = 0 fiber does not match D_{n-1}");
      if (!is_zero(q)) res.table.emplace(key, std::move(q));
    }
    out.rescaled.brackets.push_back(std::move(res));
  }
  return out;
}

// ---------------------------------------------------------------------------

BVInfinity ce_complex(const LInftyStructure& g, int truncation) {
  if (g.h_order != 1) throw InputError("ce_complex: structure must be over the ground field");
  for (auto p : g.space.parity)
    if (p != 1) throw InputError("ce_complex: the space must be purely odd (otherwise S(W) is infinite-dimensional)");
  const std::size_t w = g.dim();
  std::vector<Generator> gens;
  for (const auto& l : g.space.labels) gens.push_back({l, 1, 2});
  BVInfinity bv;
  bv.algebra = Algebra::monomial(gens);
  const Algebra& a = bv.algebra;
  std::vector<Vec> gen_vec;
  for (std::size_t i = 0; i < w; ++i) {
    std::vector<int> e(w, 0);
    e[i] = 1;
    gen_vec.push_back(a.basis(a.monomial_index(e).value()));
  }
  bv.op.truncation = truncation;
  const int cap = std::min(g.arity_cap(), truncation);
  for (int i = 1; i <= cap; ++i) {
    const MultiMap& m = g.bracket(i);
    LinearOperator delta = LinearOperator::zero(a.dim(), 1);
    for (std::size_t col = 0; col < a.dim(); ++col) {
      const auto& mono = a.monomials()[col];
      std::vector<std::uint16_t> pos;
      for (std::size_t j = 0; j < w; ++j)
        if (mono[j]) pos.push_back(static_cast<std::uint16_t>(j));
      const std::size_t k = pos.size();
      if (k < static_cast<std::size_t>(i)) continue;
      std::vector<int> par(k, 1);
      Vec out = zero_vec(a.dim());
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        if (static_cast<int>(__builtin_popcount(mask)) != i) continue;
        Key in;
        std::vector<std::size_t> order;
        Vec rest = a.unit();
        for (std::size_t j = 0; j < k; ++j)
          if (mask >> j & 1u) {
            in.push_back(pos[j]);
            order.push_back(j);
          }
        for (std::size_t j = 0; j < k; ++j)
          if (!(mask >> j & 1u)) {
            order.push_back(j);
            rest = a.mul(rest, gen_vec[pos[j]]);
          }
        const Vec* v = m.find(in);
        if (!v) continue;
        int eps = koszul_sign(par, order);
        for (std::size_t l = 0; l < w; ++l)
          if ((*v)[l] != 0) axpy(out, (*v)[l] * eps, a.mul(gen_vec[l], rest));
      }
      for (std::size_t r = 0; r < a.dim(); ++r)
        if (out[r] != 0) delta.matrix.set(r, col, out[r]);
    }
    bv.op.components.push_back(std::move(delta));
  }
  return bv;
}

// ---------------------------------------------------------------------------

Verdict main_theorem_check(const BVInfinity& bv, int up_to, int n_max) {
  Verdict v;
  v.degeneration = degeneration_check(bv, n_max);
  v.degenerate = v.degeneration.degenerate();
  auto g = fiber_structure(bv, up_to);
  auto m1 = g.differential();
  auto c = contraction_of(g.space, m1);
  auto err = verify_contraction(c, m1);
  if (!err.empty()) throw MathError("main_theorem_check: contraction check failed: " + err);
  auto t = transfer(g, c, up_to);
  v.minimal_dim = t.dim();
  v.abelian = true;
  for (const auto& b : t.brackets) {
    v.transferred_sizes.push_back(b.table.size());
    if (!b.is_zero()) v.abelian = false;
  }
  return v;
}

}  // namespace bvinf
