#include "bvinf/superalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace bvinf {

SuperSpace SuperSpace::reversed() const {
  SuperSpace r = *this;
  for (auto& p : r.parity) p ^= 1;
  return r;
}

void SuperSpace::validate() const {
  if (labels.size() != parity.size()) throw InputError("super space: labels and parities differ in length");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw InputError("super space: duplicate label '" + l + "'");
  for (int p : parity)
    if (p != 0 && p != 1) throw InputError("super space: parity must be 0 or 1");
}

// ---------------------------------------------------------------------------

Algebra::Algebra(SuperSpace space, Vec unit, std::vector<std::vector<SparseVec>> table)
    : space_(std::move(space)), unit_(std::move(unit)), table_(std::move(table)) {
  space_.validate();
  const std::size_t n = space_.dim();
  if (unit_.size() != n || table_.size() != n) throw InputError("algebra: inconsistent dimensions");
  for (const auto& row : table_)
    if (row.size() != n) throw InputError("algebra: inconsistent dimensions");
}

Algebra Algebra::from_constants(SuperSpace space, Vec unit, const std::vector<StructureConstant>& constants) {
  const std::size_t n = space.dim();
  std::vector<std::vector<std::map<std::size_t, Scalar>>> acc(n, std::vector<std::map<std::size_t, Scalar>>(n));
  for (const auto& [i, j, k, c] : constants) {
    if (i >= n || j >= n || k >= n) throw InputError("algebra: structure constant index out of range");
    acc[i][j][k] += c;
  }
  std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : acc[i][j])
        if (c != 0) table[i][j].emplace_back(k, c);
  return Algebra(std::move(space), std::move(unit), std::move(table));
}

Algebra Algebra::monomial(const std::vector<Generator>& generators) {
  std::vector<Generator> gens = generators;
  for (auto& g : gens) {
    if (g.parity == 1) g.exponent = 2;
    if (g.exponent < 1) throw InputError("monomial algebra: exponent must be positive");
  }
  const std::size_t r = gens.size();
  // Enumerate exponent vectors, then order by total degree (unit first).
  std::vector<std::vector<int>> monos{std::vector<int>(r, 0)};
  for (std::size_t g = 0; g < r; ++g) {
    std::vector<std::vector<int>> next;
    for (const auto& m : monos)
      for (int e = 0; e < gens[g].exponent; ++e) {
        auto mm = m;
        mm[g] = e;
        next.push_back(std::move(mm));
      }
    monos = std::move(next);
  }
  auto degree = [](const std::vector<int>& m) { return std::accumulate(m.begin(), m.end(), 0); };
  std::stable_sort(monos.begin(), monos.end(), [&](const auto& a, const auto& b) {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  std::map<std::vector<int>, std::size_t> index;
  SuperSpace space;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    index[monos[i]] = i;
    std::ostringstream label;
    int par = 0;
    bool first = true;
    for (std::size_t g = 0; g < r; ++g) {
      if (monos[i][g] == 0) continue;
      label << (first ? "" : "*") << gens[g].label;
      if (monos[i][g] > 1) label << '^' << monos[i][g];
      first = false;
      par ^= (gens[g].parity * monos[i][g]) & 1;
    }
    space.labels.push_back(first ? "1" : label.str());
    space.parity.push_back(par);
  }
  const std::size_t n = monos.size();
  std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<int> prod(r);
      bool zero = false;
      for (std::size_t g = 0; g < r && !zero; ++g) {
        prod[g] = monos[i][g] + monos[j][g];
        if (prod[g] >= gens[g].exponent) zero = true;
      }
      if (zero) continue;
      int swaps = 0;
      for (std::size_t a = 0; a < r; ++a) {
        if (gens[a].parity == 0 || monos[i][a] == 0) continue;
        for (std::size_t b = 0; b < a; ++b)
          if (gens[b].parity == 1 && monos[j][b] == 1) ++swaps;
      }
      table[i][j].emplace_back(index.at(prod), Scalar(parity_sign(swaps)));
    }
  Algebra alg(space, unit_vec(n, 0), std::move(table));
  std::vector<std::size_t> ideal(n - 1);
  std::iota(ideal.begin(), ideal.end(), 1);
  int max_degree = 0;
  for (const auto& g : gens) max_degree += g.exponent - 1;
  alg.ideal_ = std::move(ideal);
  alg.nilpotency_ = max_degree + 1;
  alg.generators_ = std::move(gens);
  alg.monomials_ = std::move(monos);
  return alg;
}

Algebra Algebra::truncated_polynomial(int n, const std::string& var) {
  return monomial({Generator{var, 0, n}});
}

Algebra Algebra::exterior(int k, const std::string& prefix) {
  std::vector<Generator> gens;
  for (int i = 1; i <= k; ++i) gens.push_back({prefix + std::to_string(i), 1, 2});
  return monomial(gens);
}

std::optional<std::size_t> Algebra::monomial_index(const std::vector<int>& exps) const {
  auto it = std::find(monomials_.begin(), monomials_.end(), exps);
  if (it == monomials_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - monomials_.begin());
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  Vec r = zero_vec(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      Scalar ab = a[i] * b[j];
      for (const auto& [k, c] : table_[i][j]) r[k] += ab * c;
    }
  }
  return r;
}

Vec Algebra::mul_basis(std::size_t i, const Vec& v) const {
  Vec r = zero_vec(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    if (v[j] == 0) continue;
    for (const auto& [k, c] : table_[i][j]) r[k] += v[j] * c;
  }
  return r;
}

SparseMatrix Algebra::left_mult(const Vec& a) const {
  SparseMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [k, c] : table_[i][j]) m.add(k, j, a[i] * c);
  }
  return m;
}

std::optional<int> Algebra::parity_of(const Vec& v) const {
  bool even = false, odd = false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v[i] == 0) continue;
    (parity(i) ? odd : even) = true;
  }
  if (even && odd) return std::nullopt;
  return odd ? 1 : 0;
}

bool Algebra::in_ideal(const Vec& v) const {
  if (!has_ideal()) return false;
  std::vector<bool> member(dim(), false);
  for (auto i : ideal_) member[i] = true;
  for (std::size_t i = 0; i < dim(); ++i)
    if (v[i] != 0 && !member[i]) return false;
  return true;
}

Algebra Algebra::with_ideal(std::vector<std::size_t> ideal, int nilpotency) const {
  Algebra a = *this;
  a.ideal_ = std::move(ideal);
  a.nilpotency_ = nilpotency;
  return a;
}

Algebra tensor(const Algebra& c, const Algebra& a) {
  const std::size_t nc = c.dim(), na = a.dim();
  SuperSpace space;
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const auto& lc = c.space().labels[i];
      const auto& la = a.space().labels[j];
      space.labels.push_back(lc == "1" ? la : (la == "1" ? lc : lc + "(x)" + la));
      space.parity.push_back(c.parity(i) ^ a.parity(j));
    }
  // Labels may collide after tensoring; disambiguate with the index pair.
  std::set<std::string> seen;
  for (std::size_t k = 0; k < space.labels.size(); ++k)
    if (!seen.insert(space.labels[k]).second) {
      space.labels[k] += "#" + std::to_string(k);
      seen.insert(space.labels[k]);
    }
  const std::size_t n = nc * na;
  std::vector<std::vector<SparseVec>> table(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nc; ++k)
        for (std::size_t l = 0; l < na; ++l) {
          const auto& pc = c.product(i, k);
          const auto& pa = a.product(j, l);
          if (pc.empty() || pa.empty()) continue;
          int s = parity_sign(a.parity(j) * c.parity(k));
          auto& out = table[i * na + j][k * na + l];
          for (const auto& [x, cx] : pc)
            for (const auto& [y, cy] : pa) out.emplace_back(x * na + y, cx * cy * s);
        }
  Vec unit = zero_vec(n);
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < na; ++j) unit[i * na + j] = c.unit()[i] * a.unit()[j];
  Algebra t(std::move(space), std::move(unit), std::move(table));
  if (c.has_ideal()) {
    std::vector<std::size_t> ideal;
    for (auto i : c.ideal())
      for (std::size_t j = 0; j < na; ++j) ideal.push_back(i * na + j);
    t = t.with_ideal(std::move(ideal), c.nilpotency());
  }
  return t;
}

AlgebraReport check_algebra(const Algebra& alg) {
  AlgebraReport rep;
  const std::size_t n = alg.dim();
  auto fail = [&](std::string why, std::vector<std::size_t> w) {
    rep.ok = false;
    rep.failure = std::move(why);
    rep.witness = std::move(w);
    return rep;
  };
  auto basis_product = [&](std::size_t i, std::size_t j) {
    Vec v = zero_vec(n);
    for (const auto& [k, c] : alg.product(i, j)) v[k] += c;
    return v;
  };
  if (alg.parity_of(alg.unit()) != 0) return fail("unit is not even", {});
  for (std::size_t i = 0; i < n; ++i) {
    Vec e = alg.basis(i);
    if (alg.mul(alg.unit(), e) != e || alg.mul(e, alg.unit()) != e) return fail("unit law", {i});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : alg.product(i, j))
        if (alg.parity(k) != (alg.parity(i) ^ alg.parity(j))) return fail("parity", {i, j, k});
      Vec ij = basis_product(i, j);
      Vec ji = basis_product(j, i);
      if (ij != Scalar(parity_sign(alg.parity(i) * alg.parity(j))) * ji) return fail("super-commutativity", {i, j});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec ij = basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vec left = zero_vec(n);
        for (std::size_t m = 0; m < n; ++m)
          if (ij[m] != 0) axpy(left, ij[m], basis_product(m, k));
        Vec jk = basis_product(j, k);
        Vec right = alg.mul(alg.basis(i), jk);
        if (left != right) return fail("associativity", {i, j, k});
      }
    }
  if (alg.has_ideal()) {
    std::vector<Vec> power;
    for (auto i : alg.ideal()) power.push_back(alg.basis(i));
    for (auto i : alg.ideal())
      for (std::size_t j = 0; j < n; ++j)
        if (!alg.in_ideal(basis_product(i, j))) return fail("ideal not closed under multiplication", {i, j});
    for (int k = 1; k < alg.nilpotency(); ++k) {
      std::vector<Vec> next;
      for (const auto& p : power)
        for (auto i : alg.ideal()) {
          Vec v = alg.mul(p, alg.basis(i));
          if (!bvinf::is_zero(v)) next.push_back(std::move(v));
        }
      if (!next.empty()) rref(next, n);
      power = std::move(next);
    }
    if (!power.empty()) return fail("ideal is not nilpotent of the declared exponent", {});
  }
  return rep;
}

// ---------------------------------------------------------------------------

bool LinearOperator::parity_consistent(const SuperSpace& space) const {
  for (std::size_t c = 0; c < matrix.cols(); ++c)
    for (const auto& [r, v] : matrix.column(c))
      if (space.parity[r] != (space.parity[c] ^ parity)) return false;
  return true;
}

LinearOperator compose(const LinearOperator& x, const LinearOperator& y) {
  return {x.parity ^ y.parity, x.matrix * y.matrix};
}

LinearOperator operator+(const LinearOperator& x, const LinearOperator& y) {
  return {x.parity, x.matrix + y.matrix};
}

LinearOperator scaled(const LinearOperator& x, const Scalar& s) { return {x.parity, x.matrix.scaled(s)}; }

LinearOperator graded_commutator(const LinearOperator& x, const LinearOperator& y) {
  return {x.parity ^ y.parity,
          x.matrix * y.matrix - (y.matrix * x.matrix).scaled(parity_sign(x.parity * y.parity))};
}

LinearOperator multiplication(const Algebra& alg, const Vec& a) {
  auto p = alg.parity_of(a);
  if (!p) throw MathError("multiplication: element is not homogeneous");
  return {*p, alg.left_mult(a)};
}

LinearOperator commutator(const Algebra& alg, const LinearOperator& d, const Vec& a) {
  return graded_commutator(d, multiplication(alg, a));
}

std::optional<int> operator_order(const Algebra& alg, const LinearOperator& d, int cap) {
  const std::size_t n = alg.dim();
  std::vector<LinearOperator> mult;
  for (std::size_t i = 0; i < n; ++i) mult.push_back({alg.parity(i), alg.left_mult(alg.basis(i))});
  struct Node {
    LinearOperator op;
    std::size_t last;  // largest basis index used so far
    bool last_odd_used;
  };
  std::vector<Node> level;
  if (!d.is_zero()) level.push_back({d, 0, false});
  for (int k = 0; k <= cap; ++k) {
    // level holds the nonzero k-fold commutators; compute the (k+1)-fold ones.
    std::vector<Node> next;
    for (const auto& node : level)
      for (std::size_t i = (k == 0 ? 0 : node.last); i < n; ++i) {
        if (k > 0 && i == node.last && alg.parity(i) == 1) continue;
        auto c = graded_commutator(node.op, mult[i]);
        if (!c.is_zero()) next.push_back({std::move(c), i, false});
      }
    if (next.empty()) return k;
    level = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<Key> multisets(const std::vector<int>& parity, int n) {
  std::vector<Key> out;
  Key cur;
  const std::size_t dim = parity.size();
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < dim; ++i) {
      if (!cur.empty() && cur.back() == i && parity[i] == 1) continue;
      cur.push_back(static_cast<std::uint16_t>(i));
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int sort_with_sign(Key& key, const std::vector<int>& parity) {
  int sign = 1;
  for (std::size_t i = 1; i < key.size(); ++i)
    for (std::size_t j = i; j > 0 && key[j - 1] > key[j]; --j) {
      if (parity[key[j - 1]] && parity[key[j]]) sign = -sign;
      std::swap(key[j - 1], key[j]);
    }
  for (std::size_t i = 1; i < key.size(); ++i)
    if (key[i] == key[i - 1] && parity[key[i]]) return 0;
  return sign;
}

int koszul_sign(const std::vector<int>& parities, const std::vector<std::size_t>& order) {
  int swaps = 0;
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size(); ++b)
      if (order[a] > order[b] && parities[order[a]] && parities[order[b]]) ++swaps;
  return parity_sign(swaps);
}

Vec derived_value(const Algebra& alg, const LinearOperator& d, std::span<const std::uint16_t> args) {
  // O_k = [O_{k-1}, a_k];  O_k(v) = O_{k-1}(a_k v) - s_k a_k O_{k-1}(v).
  std::function<Vec(std::size_t, const Vec&)> eval = [&](std::size_t k, const Vec& v) -> Vec {
    if (bvinf::is_zero(v)) return v;
    if (k == 0) return d.apply(v);
    std::size_t a = args[k - 1];
    int op_parity = d.parity;
    for (std::size_t i = 0; i + 1 < k; ++i) op_parity ^= alg.parity(args[i]);
    Vec r = eval(k - 1, alg.mul_basis(a, v));
    Vec t = alg.mul_basis(a, eval(k - 1, v));
    axpy(r, Scalar(-parity_sign(op_parity * alg.parity(a))), t);
    return r;
  };
  return eval(args.size(), alg.unit());
}

MultiMap derived_map(const Algebra& alg, const LinearOperator& d, int n) {
  if (n < 1) throw std::invalid_argument("derived_map: arity must be >= 1");
  return derived_map_on(alg, d, n, multisets(alg.space().parity, n));
}

MultiMap derived_map_on(const Algebra& alg, const LinearOperator& d, int n, std::vector<Key> keys) {
  // Expansion of the iterated commutator at 1:
  //   sum_S prod_{k not in S} (-s_k) * (a_{k_m} ... a_{k_1}) * D(a_S),
  // with a_S the ascending product. Products and D(products) are memoized.
  const auto& par = alg.space().parity;
  std::map<Key, Vec> prod_memo, dprod_memo;
  std::function<const Vec&(const Key&)> prod = [&](const Key& k) -> const Vec& {
    auto it = prod_memo.find(k);
    if (it != prod_memo.end()) return it->second;
    Vec v;
    if (k.empty()) {
      v = alg.unit();
    } else {
      Key head(k.begin(), k.end() - 1);
      Vec h = prod(head);
      v = bvinf::is_zero(h) ? h : alg.mul(h, alg.basis(k.back()));
    }
    return prod_memo.emplace(k, std::move(v)).first->second;
  };
  auto dprod = [&](const Key& k) -> const Vec& {
    auto it = dprod_memo.find(k);
    if (it != dprod_memo.end()) return it->second;
    return dprod_memo.emplace(k, d.apply(prod(k))).first->second;
  };

  MultiMap m{n, d.parity, alg.dim(), {}};
  const unsigned full = (1u << n) - 1;
  for (auto& key : keys) {
    Vec total = zero_vec(alg.dim());
    // s_k exponents depend only on the key.
    std::vector<int> s_exp(static_cast<std::size_t>(n));
    int acc = d.parity;
    for (int k = 0; k < n; ++k) {
      s_exp[static_cast<std::size_t>(k)] = acc * par[key[static_cast<std::size_t>(k)]];
      acc += par[key[static_cast<std::size_t>(k)]];
    }
    for (unsigned mask = 0; mask <= full; ++mask) {
      Key in, out;
      int sign_exp = 0, out_par_sum = 0, rev_exp = 0;
      for (int k = 0; k < n; ++k) {
        auto idx = key[static_cast<std::size_t>(k)];
        if (mask >> k & 1u) {
          in.push_back(idx);
        } else {
          out.push_back(idx);
          sign_exp += 1 + s_exp[static_cast<std::size_t>(k)];
          rev_exp += out_par_sum * par[idx];
          out_par_sum += par[idx];
        }
      }
      const Vec& left = prod(out);
      if (bvinf::is_zero(left)) continue;
      const Vec& right = dprod(in);
      if (bvinf::is_zero(right)) continue;
      axpy(total, Scalar(parity_sign(sign_exp + rev_exp)), alg.mul(left, right));
    }
    if (!bvinf::is_zero(total)) m.table.emplace(std::move(key), std::move(total));
  }
  return m;
}

std::optional<int> order_via_derived_maps(const Algebra& alg, const LinearOperator& d, int cap) {
  for (int n = 0; n <= cap; ++n)
    if (derived_map(alg, d, n + 1).is_zero()) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Vec exp(const Algebra& alg, const Vec& a) {
  if (!alg.in_ideal(a)) throw MathError("exp: element is not in the designated nilpotent ideal");
  Vec result = alg.unit();
  Vec term = alg.unit();
  for (int k = 1; k <= alg.nilpotency() + 1; ++k) {
    term = Scalar(1, k) * alg.mul(term, a);
    if (bvinf::is_zero(term)) break;
    result = result + term;
  }
  return result;
}

Vec log(const Algebra& alg, const Vec& b) {
  Vec u = b - alg.unit();
  if (!alg.in_ideal(u)) throw MathError("log: b - 1 is not in the designated nilpotent ideal");
  Vec result = zero_vec(alg.dim());
  Vec power = u;
  for (int k = 1; k <= alg.nilpotency() + 1 && !bvinf::is_zero(power); ++k) {
    axpy(result, Scalar(parity_sign(k + 1), k), power);
    power = alg.mul(power, u);
  }
  return result;
}

LinearOperator exp_neg_ad(const Algebra& alg, const LinearOperator& d, const Vec& a) {
  if (!alg.in_ideal(a) && !bvinf::is_zero(a)) throw MathError("exp_neg_ad: element is not in the nilpotent ideal");
  if (alg.parity_of(a) != 0) throw MathError("exp_neg_ad: element must be even");
  LinearOperator sum = d;
  LinearOperator term = d;
  const int bound = 2 * static_cast<int>(alg.dim()) + 2;
  for (int k = 1; k <= bound; ++k) {
    term = scaled(commutator(alg, term, a), Scalar(1, k));
    if (term.is_zero()) return sum;
    sum = sum + term;
  }
  throw MathError("exp_neg_ad: series failed to terminate");
}

bool exp_conjugation_check(const Algebra& alg, const LinearOperator& d, const Vec& a) {
  SparseMatrix ea = alg.left_mult(exp(alg, a));
  SparseMatrix lhs = d.matrix * ea;
  SparseMatrix rhs = ea * exp_neg_ad(alg, d, a).matrix;
  return lhs == rhs;
}

}  // namespace bvinf

namespace bvinf {

LinearOperator derivation_from_generators(const Algebra& alg, const std::vector<Vec>& values, int parity) {
  const auto& gens = alg.generators();
  if (gens.empty() && alg.dim() > 1) throw MathError("derivation_from_generators: not a monomial algebra");
  if (values.size() != gens.size()) throw MathError("derivation_from_generators: one value per generator required");
  const std::size_t n = alg.dim();
  std::vector<Vec> gen_vec;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<int> e(gens.size(), 0);
    e[g] = 1;
    auto idx = alg.monomial_index(e);
    gen_vec.push_back(idx ? alg.basis(*idx) : zero_vec(n));
    auto p = alg.parity_of(values[g]);
    if (!p || (!bvinf::is_zero(values[g]) && *p != (gens[g].parity ^ parity)))
      throw MathError("derivation_from_generators: value has the wrong parity");
  }
  // D(f_1 ... f_k) = sum_j (-1)^{|D|(|f_1|+..+|f_{j-1}|)} f_1..f_{j-1} D(f_j) f_{j+1}..f_k
  auto leibniz = [&](const std::vector<std::size_t>& factors) {
    Vec total = zero_vec(n);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      Vec left = alg.unit();
      int left_parity = 0;
      for (std::size_t i = 0; i < j; ++i) {
        left = alg.mul(left, gen_vec[factors[i]]);
        left_parity ^= gens[factors[i]].parity;
      }
      Vec term = alg.mul(left, values[factors[j]]);
      for (std::size_t i = j + 1; i < factors.size(); ++i) term = alg.mul(term, gen_vec[factors[i]]);
      axpy(total, Scalar(parity_sign(parity * left_parity)), term);
    }
    return total;
  };
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<std::size_t> power(static_cast<std::size_t>(gens[g].exponent), g);
    if (!bvinf::is_zero(leibniz(power)))
      throw MathError("derivation_from_generators: incompatible with relation " + gens[g].label + "^" +
                      std::to_string(gens[g].exponent) + " = 0");
  }
  LinearOperator d{parity, SparseMatrix(n, n)};
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<std::size_t> factors;
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (int e = 0; e < alg.monomials()[m][g]; ++e) factors.push_back(g);
    Vec image = leibniz(factors);
    for (std::size_t r = 0; r < n; ++r)
      if (image[r] != 0) d.matrix.set(r, m, image[r]);
  }
  return d;
}

LinearOperator HOperator::component(std::size_t i, std::size_t dim) const {
  if (i < components.size()) return components[i];
  return LinearOperator::zero(dim, 1);
}

SparseMatrix HOperator::total_matrix(std::size_t dim, int n) const {
  const std::size_t N = static_cast<std::size_t>(n);
  SparseMatrix m(dim * N, dim * N);
  for (std::size_t j = 0; j < components.size() && j < N; ++j)
    for (std::size_t c = 0; c < dim; ++c)
      for (const auto& [r, v] : components[j].matrix.column(c))
        for (std::size_t k = 0; k + j < N; ++k) m.add((k + j) * dim + r, k * dim + c, v);
  return m;
}

}  // namespace bvinf
