#include "bvinf/zoo.hpp"

#include <algorithm>
#include <numeric>

namespace bvinf {

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(g_() % span);
}

Scalar Rng::small_rational(int bound, int max_den) {
  Scalar r(uniform(-bound, bound), uniform(1, max_den));
  r.canonicalize();
  return r;
}

namespace {

std::size_t unit_index(const Algebra& alg) {
  const Vec& u = alg.unit();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) return i;
  throw MathError("algebra without unit");
}

Vec gen_vec(const Algebra& a, std::size_t g) {
  std::vector<int> e(a.generators().size(), 0);
  e[g] = 1;
  auto idx = a.monomial_index(e);
  return idx ? a.basis(*idx) : zero_vec(a.dim());
}

LieData lie(int dim, std::vector<LieConstant> c) { return LieData{dim, std::move(c)}; }

}  // namespace

Algebra random_algebra(Rng& rng, std::size_t max_dim, std::size_t min_dim) {
  if (min_dim > max_dim || max_dim < 2) throw std::invalid_argument("random_algebra: bad dimension range");
  for (;;) {
    std::vector<Generator> gens;
    std::size_t dim = 1;
    int odd = 0, even = 0;
    for (int tries = 0; tries < 6; ++tries) {
      bool is_odd = rng.chance(60);
      int e = is_odd ? 2 : rng.uniform(2, 4);
      if (dim * static_cast<std::size_t>(e) > max_dim) continue;
      dim *= static_cast<std::size_t>(e);
      gens.push_back({is_odd ? "t" + std::to_string(++odd) : "x" + std::to_string(++even), is_odd ? 1 : 0, e});
      if (dim >= std::max<std::size_t>(min_dim, 4) && rng.chance(35)) break;
    }
    if (dim >= std::max<std::size_t>(min_dim, 2) && odd > 0) return Algebra::monomial(gens);
  }
}

Vec random_ideal_element(Rng& rng, const Algebra& alg, int parity) {
  Vec v = zero_vec(alg.dim());
  for (auto i : alg.ideal())
    if (alg.parity(i) == parity && rng.chance(50)) v[i] = rng.small_int(2);
  return v;
}

LinearOperator random_odd_operator(Rng& rng, const Algebra& alg) {
  LinearOperator d = LinearOperator::zero(alg.dim(), 1);
  for (std::size_t c = 0; c < alg.dim(); ++c)
    for (std::size_t r = 0; r < alg.dim(); ++r)
      if (alg.parity(r) != alg.parity(c) && rng.chance(30)) d.matrix.set(r, c, rng.small_int(2));
  return d;
}

LinearOperator random_square_zero_operator(Rng& rng, const Algebra& alg) {
  const std::size_t n = alg.dim(), u = unit_index(alg);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < n; ++i)
    if (i != u) pool.push_back(i);
  for (std::size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
  SparseMatrix d0(n, n);
  std::vector<bool> used(n, false);
  for (auto a : pool) {
    if (used[a] || !rng.chance(70)) continue;
    for (auto b : pool)
      if (!used[b] && b != a && alg.parity(b) != alg.parity(a)) {
        d0.set(b, a, 1);
        used[a] = used[b] = true;
        break;
      }
  }
  SparseMatrix nil(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    if (c == u) continue;
    for (std::size_t r = c + 1; r < n; ++r)
      if (alg.parity(r) == alg.parity(c) && rng.chance(30)) nil.set(r, c, rng.small_int(2));
  }
  SparseMatrix g = SparseMatrix::identity(n) + nil;
  SparseMatrix ginv = SparseMatrix::identity(n), power = SparseMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    power = power * nil.scaled(-1);
    if (power.is_zero()) break;
    ginv = ginv + power;
  }
  return LinearOperator{1, g * d0 * ginv};
}

LinearOperator perturb_operator(Rng& rng, const Algebra& alg, const LinearOperator& d) {
  const std::size_t n = alg.dim(), u = unit_index(alg);
  LinearOperator out = d;
  for (int tries = 0; tries < 1000; ++tries) {
    auto r = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    auto c = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
    if (c == u || alg.parity(r) == alg.parity(c)) continue;
    Scalar v = rng.small_int(2);
    if (v == 0) continue;
    out.matrix.add(r, c, v);
    if (!(out.matrix * out.matrix).is_zero()) return out;
  }
  throw MathError("perturb_operator: could not break D^2 = 0 (algebra too small?)");
}

// ---------------------------------------------------------------------------

std::vector<NamedLie> lie_zoo() {
  const Scalar one(1);
  return {
      {"abelian2", LieData::abelian(2)},
      {"abelian3", LieData::abelian(3)},
      {"abelian4", LieData::abelian(4)},
      {"aff1", lie(2, {{0, 1, 1, one}})},
      {"heisenberg", LieData::heisenberg()},
      {"sl2", LieData::sl2()},
      {"so3", lie(3, {{0, 1, 2, one}, {1, 2, 0, one}, {2, 0, 1, one}})},
      {"r3", lie(3, {{0, 1, 1, one}, {0, 2, 2, one}})},
      {"heisenberg+k", lie(4, {{0, 1, 2, one}})},
      {"filiform4", lie(4, {{0, 1, 2, one}, {0, 2, 3, one}})},
      {"aff1+aff1", lie(4, {{0, 1, 1, one}, {2, 3, 3, one}})},
      {"sl2+k", lie(4, {{0, 1, 2, one}, {2, 0, 0, Scalar(2)}, {2, 1, 1, Scalar(-2)}})},
      {"heisenberg5", lie(5, {{0, 1, 4, one}, {2, 3, 4, one}})},
  };
}

LieData conjugate_lie(Rng& rng, const LieData& g) {
  const auto n = static_cast<std::size_t>(g.dim);
  auto t = g.table();
  // columns of G: new basis in old coordinates (unitriangular times a permutation)
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
  std::vector<Vec> cols;
  for (std::size_t a = 0; a < n; ++a) {
    Vec v = zero_vec(n);
    v[perm[a]] = rng.chance(50) ? Scalar(1) : Scalar(rng.uniform(1, 3) * (rng.chance(50) ? 1 : -1));
    for (std::size_t b = 0; b < a; ++b)
      if (rng.chance(40)) v[perm[b]] = rng.small_int(2);
    cols.push_back(v);
  }
  Coordinates coords(cols, n);
  LieData out{g.dim, {}};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vec v = zero_vec(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (cols[a][i] != 0 && cols[b][j] != 0) axpy(v, cols[a][i] * cols[b][j], t[i][j]);
      Vec c = coords.solve(v).value();
      for (std::size_t k = 0; k < n; ++k)
        if (c[k] != 0) out.constants.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<int>(k), c[k]});
    }
  return out;
}

LInftyStructure random_odd_linfty(Rng& rng, int arity_cap) {
  std::vector<NamedLie> small;
  for (auto& z : lie_zoo())
    if (z.lie.dim <= 4) small.push_back(z);
  LieData g = conjugate_lie(rng, rng.pick(small).lie);
  LInftyStructure l = lie_linfty(g, arity_cap);
  if (g.dim == 4 && arity_cap >= 4 && rng.chance(70)) {
    Vec v = zero_vec(4);
    while (is_zero(v))
      for (auto& x : v) x = rng.small_int(2);
    l.brackets[3].table.emplace(Key{0, 1, 2, 3}, v);
  }
  return l;
}

// ---------------------------------------------------------------------------

std::vector<BaseCDGA> base_cdga_zoo() {
  std::vector<BaseCDGA> out;
  for (const auto& z : lie_zoo()) {
    if (z.lie.dim > 4) continue;
    auto m = invariant_model(z.lie, PolyMultivector(z.lie.dim), 1);
    out.push_back({"ce-" + z.name, m.model.algebra, m.model.d});
  }
  for (const char* name : {"koszul-s3", "mixed-t3", "dual-odd"}) {
    const auto& c = test_cdga(name);
    out.push_back({name, c.algebra, c.d});
  }
  return out;
}

LinearOperator random_gauge_generator(Rng& rng, const Algebra& alg) {
  const auto& gens = alg.generators();
  const std::size_t n = alg.dim();
  std::vector<Vec> gv;
  for (std::size_t g = 0; g < gens.size(); ++g) gv.push_back(gen_vec(alg, g));
  // derivations with a single nonzero generator value, of parity p
  auto derivation = [&](int p) {
    std::vector<Vec> values(gens.size(), zero_vec(n));
    auto g = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(gens.size()) - 1));
    int want = gens[g].parity ^ p;
    if (gens[g].parity == 0) {
      // x -> x * c keeps x^k = 0
      Vec c = random_ideal_element(rng, alg, want);
      if (want == 0 && rng.chance(50)) c = c + alg.unit();
      values[g] = alg.mul(gv[g], c);
    } else {
      Vec c = random_ideal_element(rng, alg, want);
      if (want == 0 && rng.chance(60)) c = c + alg.unit();
      values[g] = c;
    }
    return derivation_from_generators(alg, values, p);
  };
  LinearOperator x = LinearOperator::zero(n, 0);
  const int terms = rng.uniform(1, 3);
  for (int t = 0; t < terms; ++t) {
    Scalar a = rng.small_rational(2, 2);
    if (a == 0) a = 1;
    switch (rng.uniform(0, 2)) {
      case 0:
        x = x + scaled(derivation(0), a);
        break;
      case 1: {
        int p = rng.uniform(0, 1);
        x = x + scaled(compose(derivation(p), derivation(p)), a);
        break;
      }
      default: {
        int p = rng.uniform(0, 1);
        Vec c = random_ideal_element(rng, alg, 0) + alg.unit();
        x = x + scaled(compose(multiplication(alg, c), compose(derivation(p), derivation(p))), a);
      }
    }
  }
  return x;
}

BVInfinity gauge_family(const Algebra& alg, const LinearOperator& d0, const LinearOperator& x, int truncation) {
  if (x.parity != 0) throw MathError("gauge_family: generator must be even");
  BVInfinity bv;
  bv.algebra = alg;
  bv.op.truncation = truncation;
  bv.op.components.push_back(d0);
  LinearOperator cur = d0;
  for (int k = 1; k < truncation; ++k) {
    cur = scaled(graded_commutator(x, cur), Scalar(1, k));
    bv.op.components.push_back(cur);
  }
  return bv;
}

BVInfinity random_gauge_family(Rng& rng, int truncation) {
  static const std::vector<BaseCDGA> bases = base_cdga_zoo();
  for (;;) {
    const auto& b = rng.pick(bases);
    auto x = random_gauge_generator(rng, b.algebra);
    auto bv = gauge_family(b.algebra, b.d, x, truncation);
    // prefer families where the deformation is visible
    bool trivial = true;
    for (std::size_t i = 1; i < bv.op.components.size(); ++i)
      if (!bv.op.components[i].is_zero()) trivial = false;
    if (!trivial || rng.chance(10)) return bv;
  }
}

NamedFamily random_bv_family(Rng& rng, int truncation) {
  switch (rng.uniform(0, 3)) {
    case 0:
      return {"gauge", random_gauge_family(rng, truncation)};
    case 1: {
      auto z = lie_zoo();
      const auto& g = rng.pick(z);
      return {"ce-" + g.name, ce_complex(lie_linfty(conjugate_lie(rng, g.lie), truncation), truncation)};
    }
    case 2:
      return {"ce-linfty", ce_complex(random_odd_linfty(rng, std::max(truncation, 4)), truncation)};
    default: {
      auto cases = invariant_cases(rng, 24);
      const auto& c = rng.pick(cases);
      return {"invariant-" + c.name, invariant_model(c.lie, c.p, truncation).bv};
    }
  }
}

// ---------------------------------------------------------------------------

Vec random_mc_candidate(Rng& rng, const TestCDGA& c, const Algebra& alg, const LinearOperator& d, bool cycle) {
  Algebra t = tensor(c.algebra, alg);
  if (!cycle) return random_ideal_element(rng, t, 0);
  SparseMatrix m = total_differential(c, alg, d);
  std::vector<std::size_t> cols;
  for (auto i : t.ideal())
    if (t.parity(i) == 0) cols.push_back(i);
  SparseMatrix sub(t.dim(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (const auto& [r, v] : m.column(cols[k])) sub.set(r, k, v);
  auto ker = kernel_image(sub).kernel;
  Vec z = zero_vec(t.dim());
  for (const auto& v : ker) {
    Scalar a = rng.small_int(2);
    for (std::size_t k = 0; k < cols.size(); ++k) z[cols[k]] += a * v[k];
  }
  return log(t, t.unit() + z);
}

PolyMultivector random_k_vector(Rng& rng, int n, int k, int max_coeff_degree) {
  if (k < 0 || k > n) throw InputError("random_k_vector: need 0 <= k <= n");
  for (;;) {
    PolyMultivector q(n);
    const int terms = rng.uniform(1, 3);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      for (std::size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(i) - 1))]);
      std::uint32_t mask = 0;
      for (int i = 0; i < k; ++i) mask |= 1u << idx[static_cast<std::size_t>(i)];
      const int monos = rng.uniform(1, 3);
      for (int j = 0; j < monos; ++j) {
        Monomial m{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), mask};
        int deg = rng.uniform(0, max_coeff_degree);
        for (int e = 0; e < deg; ++e) ++m.exps[static_cast<std::size_t>(rng.uniform(0, n - 1))];
        q.add_term(m, rng.small_int(3));
      }
    }
    if (!q.is_zero()) return q;
  }
}

std::vector<InvariantCase> invariant_cases(Rng& rng, std::size_t count) {
  auto zoo = lie_zoo();
  auto find = [&](const std::string& name) {
    for (auto& z : zoo)
      if (z.name == name) return z.lie;
    throw std::logic_error("unknown Lie algebra " + name);
  };
  std::vector<InvariantCase> fixed;
  auto add = [&](const std::string& name, const char* p) {
    auto g = find(name);
    fixed.push_back({name + ":" + p, g, parse_expression(p, g.dim, true)});
  };
  add("abelian4", "@1^@2 + @3^@4");
  add("heisenberg+k", "@1^@3");
  add("heisenberg+k", "@1^@3 + 2*@1^@2^@3^@4");
  add("heisenberg", "@1^@3");
  add("aff1", "@1^@2");
  add("r3", "@2^@3");
  add("filiform4", "@3^@4 + @1^@2^@3^@4");
  add("sl2", "0");
  std::vector<InvariantCase> out;
  for (std::size_t i = 0; i < std::min(count, fixed.size()); ++i) out.push_back(fixed[i]);
  while (out.size() < count) {
    const auto& z = zoo[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(zoo.size()) - 1))];
    const int n = z.lie.dim;
    if (n < 2) continue;
    PolyMultivector p(n);
    const int terms = rng.uniform(1, 2);
    for (int t = 0; t < terms; ++t) {
      int i = rng.uniform(0, n - 1), j = rng.uniform(0, n - 1);
      if (i == j) continue;
      p.add_term(Monomial{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), (1u << i) | (1u << j)},
                 rng.small_int(2));
    }
    if (n >= 4 && rng.chance(40)) {
      int skip = n == 5 ? rng.uniform(0, 4) : -1;
      std::uint32_t mask = 0;
      for (int i = 0; i < n; ++i)
        if (i != skip) mask |= 1u << i;
      p.add_term(Monomial{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), mask}, rng.small_int(2));
    }
    if (p.is_zero() || !lie_schouten(z.lie, p, p).is_zero()) continue;
    out.push_back({z.name + ":" + format_multivector(p), z.lie, p});
  }
  return out;
}

}  // namespace bvinf
