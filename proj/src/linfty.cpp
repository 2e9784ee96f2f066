#include "bvinf/linfty.hpp"

#include <algorithm>
#include <functional>

namespace bvinf {

Vec apply_multimap(const MultiMap& m, const std::vector<int>& parity, int h_order, std::span<const Vec> args) {
  const std::size_t dim = parity.size();
  const std::size_t n = args.size();
  if (static_cast<int>(n) != m.arity) throw std::invalid_argument("apply_multimap: wrong number of arguments");
  Vec out = zero_vec(m.out_dim);
  if (m.table.empty()) return out;
  const std::size_t out_base = m.out_dim / static_cast<std::size_t>(h_order);

  struct Term {
    int hpow;
    std::uint16_t index;
    Scalar coeff;
  };
  std::vector<std::vector<Term>> terms(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t t = 0; t < args[a].size(); ++t)
      if (args[a][t] != 0)
        terms[a].push_back({static_cast<int>(t / dim), static_cast<std::uint16_t>(t % dim), args[a][t]});
    if (terms[a].empty()) return out;
  }
  Key key(n);
  std::function<void(std::size_t, int, const Scalar&)> rec = [&](std::size_t pos, int hpow, const Scalar& coeff) {
    if (pos == n) {
      Key sorted = key;
      int s = sort_with_sign(sorted, parity);
      if (s == 0) return;
      const Vec* val = m.find(sorted);
      if (!val) return;
      Scalar f = coeff * s;
      for (std::size_t t = 0; t < val->size(); ++t) {
        if ((*val)[t] == 0) continue;
        std::size_t k = t / out_base + static_cast<std::size_t>(hpow);
        if (k >= static_cast<std::size_t>(h_order)) continue;
        out[k * out_base + t % out_base] += f * (*val)[t];
      }
      return;
    }
    for (const auto& term : terms[pos]) {
      if (hpow + term.hpow >= h_order) continue;
      key[pos] = term.index;
      rec(pos + 1, hpow + term.hpow, coeff * term.coeff);
    }
  };
  rec(0, 0, Scalar(1));
  return out;
}

const MultiMap& LInftyStructure::bracket(int n) const {
  if (n < 1 || n > arity_cap())
    throw MathError("L-infinity structure: bracket arity " + std::to_string(n) + " beyond the arity cap");
  return brackets[static_cast<std::size_t>(n - 1)];
}

Vec LInftyStructure::apply(int n, std::span<const Vec> args) const {
  return apply_multimap(bracket(n), space.parity, h_order, args);
}

SparseMatrix LInftyStructure::differential() const {
  const std::size_t vd = value_dim();
  SparseMatrix m(vd, vd);
  if (brackets.empty()) return m;
  for (std::size_t t = 0; t < vd; ++t) {
    Vec e = unit_vec(vd, t);
    Vec img = apply(1, std::span<const Vec>(&e, 1));
    for (std::size_t r = 0; r < vd; ++r)
      if (img[r] != 0) m.set(r, t, img[r]);
  }
  return m;
}

MultiMap multimap_from_matrix(const SparseMatrix& m, int parity) {
  MultiMap out{1, parity, m.rows(), {}};
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m.column(c).empty()) out.table.emplace(Key{static_cast<std::uint16_t>(c)}, m.column_vec(c));
  return out;
}

LInftyStructure LInftyStructure::abelian(SuperSpace space, const SparseMatrix& m1, int arity_cap) {
  LInftyStructure l;
  l.space = std::move(space);
  l.brackets.push_back(multimap_from_matrix(m1, 1));
  for (int n = 2; n <= arity_cap; ++n) l.brackets.push_back(MultiMap{n, 1, l.dim(), {}});
  return l;
}

namespace {

Key sub_key(const Key& key, unsigned mask, bool inside) {
  Key out;
  for (std::size_t i = 0; i < key.size(); ++i)
    if (static_cast<bool>(mask >> i & 1u) == inside) out.push_back(key[i]);
  return out;
}

std::vector<int> key_parities(const Key& key, const std::vector<int>& parity) {
  std::vector<int> p;
  for (auto k : key) p.push_back(parity[k]);
  return p;
}

// Sum over unshuffles (S, S^c) of outer(inner(x_S), x_{S^c}).
template <class Inner, class Outer>
Vec unshuffle_sum(const Key& key, const std::vector<int>& parity, std::size_t out_dim, Inner inner, Outer outer) {
  const std::size_t n = key.size();
  Vec total = zero_vec(out_dim);
  auto kp = key_parities(key, parity);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Key in = sub_key(key, mask, true);
    const Vec* v = inner(in);
    if (!v) continue;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) order.push_back(i);
    for (std::size_t i = 0; i < n; ++i)
      if (!(mask >> i & 1u)) order.push_back(i);
    int eps = koszul_sign(kp, order);
    Vec r = outer(*v, sub_key(key, mask, false));
    axpy(total, Scalar(eps), r);
  }
  return total;
}

// Set partitions of {0..n-1}, blocks ordered by their smallest element.
void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::vector<std::size_t>>&)>& fn) {
  std::vector<std::vector<std::size_t>> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      fn(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

}  // namespace

RelationReport check_relations(const LInftyStructure& l, int up_to) {
  RelationReport rep;
  const auto& par = l.space.parity;
  const std::size_t vd = l.value_dim();
  up_to = std::min(up_to, l.arity_cap());
  for (int n = 1; n <= up_to; ++n) {
    for (const auto& key : multisets(par, n)) {
      auto inner = [&](const Key& k) { return l.bracket(static_cast<int>(k.size())).find(k); };
      auto outer = [&](const Vec& v, const Key& rest) {
        std::vector<Vec> args{v};
        for (auto r : rest) args.push_back(l.basis(r));
        return l.apply(static_cast<int>(args.size()), args);
      };
      Vec total = unshuffle_sum(key, par, vd, inner, outer);
      if (!bvinf::is_zero(total)) {
        rep.ok = false;
        rep.failing_arity = n;
        rep.witness = key;
        rep.residual = std::move(total);
        return rep;
      }
    }
  }
  return rep;
}

LInftyStructure derived_structure(const Algebra& alg, const LinearOperator& d, int arity_cap) {
  LInftyStructure l;
  l.space = alg.space();
  for (int n = 1; n <= arity_cap; ++n) l.brackets.push_back(derived_map(alg, d, n));
  return l;
}

LInftyStructure from_operator(const Algebra& alg, const LinearOperator& d, int arity_cap) {
  if (d.parity != 1) throw MathError("from_operator: operator must be odd");
  if (!bvinf::is_zero(d.apply(alg.unit())))
    throw CurvedError("from_operator: D(1) != 0 defines a curved structure, which is not supported");
  if (!(d.matrix * d.matrix).is_zero()) throw MathError("from_operator: D^2 != 0");
  return derived_structure(alg, d, arity_cap);
}

// ---------------------------------------------------------------------------

MorphismReport check_morphism(const LInftyMorphism& f, int up_to) {
  MorphismReport rep;
  const auto& src = f.source;
  const auto& tgt = f.target;
  const auto& par = src.space.parity;
  up_to = std::min({up_to, src.arity_cap(), tgt.arity_cap(), static_cast<int>(f.components.size())});
  auto f_apply = [&](int n, std::span<const Vec> args) {
    return apply_multimap(f.components[static_cast<std::size_t>(n - 1)], par, src.h_order, args);
  };
  for (int n = 1; n <= up_to; ++n) {
    for (const auto& key : multisets(par, n)) {
      auto inner = [&](const Key& k) { return src.bracket(static_cast<int>(k.size())).find(k); };
      auto outer = [&](const Vec& v, const Key& rest) {
        std::vector<Vec> args{v};
        for (auto r : rest) args.push_back(src.basis(r));
        return f_apply(static_cast<int>(args.size()), args);
      };
      Vec lhs = unshuffle_sum(key, par, tgt.value_dim(), inner, outer);

      Vec rhs = zero_vec(tgt.value_dim());
      auto kp = key_parities(key, par);
      for_each_partition(key.size(), [&](const std::vector<std::vector<std::size_t>>& blocks) {
        std::vector<Vec> args;
        std::vector<std::size_t> order;
        for (const auto& b : blocks) {
          Key bk;
          for (auto i : b) {
            bk.push_back(key[i]);
            order.push_back(i);
          }
          const Vec* v = f.components[bk.size() - 1].find(bk);
          if (!v) return;
          args.push_back(*v);
        }
        Vec r = tgt.apply(static_cast<int>(blocks.size()), args);
        axpy(rhs, Scalar(koszul_sign(kp, order)), r);
      });
      if (lhs != rhs) {
        rep.ok = false;
        rep.failing_arity = n;
        rep.witness = key;
        return rep;
      }
    }
  }
  return rep;
}

LInftyMorphism exp_morphism(const Algebra& alg, const LinearOperator& d, int arity_cap) {
  LInftyMorphism f;
  f.source = from_operator(alg, d, arity_cap);
  f.target = LInftyStructure::abelian(alg.space(), d.matrix, arity_cap);
  for (int n = 1; n <= arity_cap; ++n) {
    MultiMap m{n, 0, alg.dim(), {}};
    for (auto& key : multisets(alg.space().parity, n)) {
      Vec p = alg.unit();
      for (auto k : key) p = alg.mul(p, alg.basis(k));
      if (!bvinf::is_zero(p)) m.table.emplace(std::move(key), std::move(p));
    }
    f.components.push_back(std::move(m));
  }
  return f;
}

// ---------------------------------------------------------------------------

void TestCDGA::validate() const {
  const auto& c = algebra;
  auto rep = check_algebra(c);
  if (!rep.ok) throw MathError("test cdga '" + name + "': " + rep.failure);
  if (!c.has_ideal()) throw MathError("test cdga '" + name + "': no maximal ideal designated");
  if (c.ideal().size() + 1 != c.dim() || c.in_ideal(c.unit()))
    throw MathError("test cdga '" + name + "': C/C+ is not one-dimensional");
  if (d.parity != 1) throw MathError("test cdga '" + name + "': differential must be odd");
  if (!bvinf::is_zero(d.apply(c.unit()))) throw MathError("test cdga '" + name + "': d(1) != 0");
  if (!(d.matrix * d.matrix).is_zero()) throw MathError("test cdga '" + name + "': d^2 != 0");
  auto ord = operator_order(c, d, 1);
  if (!ord || *ord > 1) throw MathError("test cdga '" + name + "': d is not a derivation");
  for (auto i : c.ideal())
    if (!c.in_ideal(d.apply(c.basis(i))) && !bvinf::is_zero(d.apply(c.basis(i))))
      throw MathError("test cdga '" + name + "': d does not preserve C+");
}

namespace {

TestCDGA make_cdga(std::string name, const std::vector<Generator>& gens,
                   const std::function<std::vector<Vec>(const Algebra&)>& values) {
  Algebra c = Algebra::monomial(gens);
  auto d = values ? derivation_from_generators(c, values(c), 1) : LinearOperator::zero(c.dim(), 1);
  TestCDGA t{std::move(name), std::move(c), std::move(d)};
  t.validate();
  return t;
}

Vec monomial_vec(const Algebra& c, std::vector<int> exps) { return c.basis(c.monomial_index(exps).value()); }

}  // namespace

std::vector<TestCDGA> test_cdga_zoo() {
  std::vector<TestCDGA> zoo;
  zoo.push_back(make_cdga("dual-numbers", {{"e", 0, 2}}, nullptr));
  zoo.push_back(make_cdga("two-epsilon", {{"e1", 0, 2}, {"e2", 0, 2}}, nullptr));
  zoo.push_back(make_cdga("truncated-t4", {{"t", 0, 4}}, nullptr));
  zoo.push_back(make_cdga("odd-pair", {{"n1", 1, 2}, {"n2", 1, 2}}, nullptr));
  // Q[s]/(s^3) (x) Lambda(u), du = s
  zoo.push_back(make_cdga("koszul-s3", {{"s", 0, 3}, {"u", 1, 2}}, [](const Algebra& c) {
    return std::vector<Vec>{zero_vec(c.dim()), monomial_vec(c, {1, 0})};
  }));
  // Q[t]/(t^3) (x) Lambda(u), du = t^2
  zoo.push_back(make_cdga("mixed-t3", {{"t", 0, 3}, {"u", 1, 2}}, [](const Algebra& c) {
    return std::vector<Vec>{zero_vec(c.dim()), monomial_vec(c, {2, 0})};
  }));
  // Q[e]/(e^2) (x) Lambda(n), no differential
  zoo.push_back(make_cdga("dual-odd", {{"e", 0, 2}, {"n", 1, 2}}, nullptr));
  return zoo;
}

const TestCDGA& test_cdga(const std::string& name) {
  static const std::vector<TestCDGA> zoo = test_cdga_zoo();
  for (const auto& c : zoo)
    if (c.name == name) return c;
  throw InputError("unknown test cdga '" + name + "'");
}

// ---------------------------------------------------------------------------

namespace {

// sum_{i>=1} 1/i! F_i^C(xi, ..., xi) with F_i = maps[i-1] of parity map_parity
// acting from a space with parities w_parity into a space of dimension out_w.
Vec extend_series(const Algebra& c, const std::vector<int>& w_parity, const std::vector<MultiMap>& maps,
                  int map_parity, std::size_t out_w, const Vec& xi) {
  const std::size_t dim_w = w_parity.size();
  struct Term {
    std::size_t c, w;
    Scalar coeff;
  };
  std::vector<Term> terms;
  for (std::size_t t = 0; t < xi.size(); ++t)
    if (xi[t] != 0) terms.push_back({t / dim_w, t % dim_w, xi[t]});
  Vec out = zero_vec(c.dim() * out_w);

  Key ws;
  std::function<void(std::size_t, std::size_t, const Vec&, const Scalar&, int, int, int)> rec =
      [&](std::size_t start, std::size_t run, const Vec& cprod, const Scalar& coeff, int c_total, int w_total,
          int kexp) {
        const std::size_t depth = ws.size();
        if (depth > 0) {
          if (depth > maps.size()) throw MathError("Maurer-Cartan series exceeds the arity cap of the structure");
          Key sorted = ws;
          int s = sort_with_sign(sorted, w_parity);
          const Vec* val = s ? maps[depth - 1].find(sorted) : nullptr;
          if (val) {
            Scalar f = coeff * s * parity_sign(map_parity * c_total + kexp);
            for (std::size_t ci = 0; ci < c.dim(); ++ci) {
              if (cprod[ci] == 0) continue;
              for (std::size_t wi = 0; wi < out_w; ++wi)
                if ((*val)[wi] != 0) out[ci * out_w + wi] += f * cprod[ci] * (*val)[wi];
            }
          }
        }
        for (std::size_t t = start; t < terms.size(); ++t) {
          Vec next = c.mul(cprod, c.basis(terms[t].c));
          if (bvinf::is_zero(next)) continue;
          std::size_t nrun = (depth > 0 && t == start && run > 0) ? run + 1 : 1;
          Scalar ncoeff = coeff * terms[t].coeff / static_cast<long>(nrun);
          int pc = c.parity(terms[t].c);
          ws.push_back(static_cast<std::uint16_t>(terms[t].w));
          rec(t, nrun, next, ncoeff, c_total + pc, w_total + w_parity[terms[t].w], kexp + w_total * pc);
          ws.pop_back();
        }
      };
  rec(0, 0, c.unit(), Scalar(1), 0, 0, 0);
  return out;
}

}  // namespace

Vec mc_residual(const LInftyStructure& l, const TestCDGA& c, const Vec& xi) {
  if (l.h_order != 1) throw MathError("mc_residual: structure must be over the ground field");
  const std::size_t dw = l.dim();
  if (xi.size() != c.algebra.dim() * dw) throw std::invalid_argument("mc_residual: element has the wrong size");
  for (std::size_t t = 0; t < xi.size(); ++t) {
    if (xi[t] == 0) continue;
    std::size_t ci = t / dw, wi = t % dw;
    if (!c.algebra.in_ideal(c.algebra.basis(ci))) throw MathError("mc_residual: element is not in C+ (x) W");
    if ((c.algebra.parity(ci) ^ l.space.parity[wi]) != 0) throw MathError("mc_residual: element is not even");
  }
  Vec res = extend_series(c.algebra, l.space.parity, l.brackets, 1, dw, xi);
  for (std::size_t t = 0; t < xi.size(); ++t) {
    if (xi[t] == 0) continue;
    std::size_t ci = t / dw, wi = t % dw;
    for (const auto& [r, v] : c.d.matrix.column(ci)) res[r * dw + wi] += xi[t] * v;
  }
  return res;
}

Vec push_forward(const LInftyMorphism& f, const TestCDGA& c, const Vec& xi) {
  return extend_series(c.algebra, f.source.space.parity, f.components, 0, f.target.dim(), xi);
}

SparseMatrix total_differential(const TestCDGA& c, const Algebra& alg, const LinearOperator& d) {
  const std::size_t nc = c.algebra.dim(), na = alg.dim();
  SparseMatrix m(nc * na, nc * na);
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const std::size_t col = i * na + j;
      for (const auto& [r, v] : c.d.matrix.column(i)) m.add(r * na + j, col, v);
      int s = parity_sign(c.algebra.parity(i) * d.parity);
      for (const auto& [r, v] : d.matrix.column(j)) m.add(i * na + r, col, v * s);
    }
  return m;
}

MCCheck mc_exponential_check(const Algebra& alg, const LinearOperator& d, const TestCDGA& c, const Vec& xi) {
  MCCheck out;
  const int cap = std::max(1, c.algebra.nilpotency() - 1);
  auto l = from_operator(alg, d, cap);
  out.is_mc = bvinf::is_zero(mc_residual(l, c, xi));
  Algebra t = tensor(c.algebra, alg);
  if (t.parity_of(xi) != 0) throw MathError("mc_exponential_check: element is not even");
  Vec e = exp(t, xi) - t.unit();
  out.is_cycle = bvinf::is_zero(total_differential(c, alg, d).apply(e));
  return out;
}

}  // namespace bvinf
