#include "bvinf/linfty.hpp"

#include <functional>
#include <map>

namespace bvinf {

Contraction contraction_of(const SuperSpace& space, const SparseMatrix& m1) {
  const std::size_t n = space.dim();
  if (m1.rows() != n || m1.cols() != n) throw std::invalid_argument("contraction_of: m1 has the wrong shape");
  if (!(m1 * m1).is_zero()) throw MathError("contraction_of: m1^2 != 0");
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& [r, v] : m1.column(c))
      if (space.parity[r] == space.parity[c]) throw MathError("contraction_of: m1 is not odd");

  // Per parity: a maximal independent set of image columns m1(e_c) gives
  // preimages c_j = e_c and boundaries b_j. Homology sections extend the
  // boundaries inside the kernel; everything stays homogeneous.
  std::vector<Vec> bounds, pre, sections;
  std::vector<int> section_parity;
  for (int p = 0; p < 2; ++p) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (space.parity[i] == p) idx.push_back(i);
    std::vector<Vec> rows;
    for (auto i : idx) rows.push_back(m1.column_vec(i));
    // Greedy independent columns.
    std::vector<Vec> taken;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto trial = taken;
      trial.push_back(rows[k]);
      if (rank(trial) == trial.size()) {
        taken = std::move(trial);
        pre.push_back(unit_vec(n, idx[k]));
        bounds.push_back(rows[k]);
      }
    }
  }
  for (int p = 0; p < 2; ++p) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (space.parity[i] == p) idx.push_back(i);
    if (idx.empty()) continue;
    // Kernel of m1 on the parity-p block.
    SparseMatrix block(n, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (const auto& [r, v] : m1.column(idx[k])) block.set(r, k, v);
    auto ker = kernel_image(block).kernel;
    std::vector<Vec> span;
    for (const auto& b : bounds) {
      bool in_p = true;
      for (std::size_t i = 0; i < n; ++i)
        if (b[i] != 0 && space.parity[i] != p) in_p = false;
      if (in_p) span.push_back(b);
    }
    for (const auto& kv : ker) {
      Vec full = zero_vec(n);
      for (std::size_t k = 0; k < idx.size(); ++k) full[idx[k]] = kv[k];
      auto trial = span;
      trial.push_back(full);
      if (rank(trial) == trial.size()) {
        span = std::move(trial);
        sections.push_back(full);
        section_parity.push_back(p);
      }
    }
  }
  if (bounds.size() * 2 + sections.size() != n) throw MathError("contraction_of: dimension count mismatch");

  std::vector<Vec> all = bounds;
  all.insert(all.end(), sections.begin(), sections.end());
  all.insert(all.end(), pre.begin(), pre.end());
  Coordinates coords(all, n);
  const std::size_t nb = bounds.size(), nh = sections.size();

  Contraction c;
  for (std::size_t i = 0; i < nh; ++i) {
    c.homology.labels.push_back("h" + std::to_string(i + 1));
    c.homology.parity.push_back(section_parity[i]);
  }
  c.iota = SparseMatrix::from_columns(sections, n);
  c.pi = SparseMatrix(nh, n);
  c.kappa = SparseMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto x = coords.solve(unit_vec(n, col)).value();
    for (std::size_t i = 0; i < nh; ++i) c.pi.set(i, col, x[nb + i]);
    for (std::size_t j = 0; j < nb; ++j)
      if (x[j] != 0)
        for (std::size_t r = 0; r < n; ++r)
          if (pre[j][r] != 0) c.kappa.add(r, col, -x[j] * pre[j][r]);
  }
  return c;
}

std::string verify_contraction(const Contraction& c, const SparseMatrix& m1) {
  const std::size_t n = m1.rows(), nh = c.homology.dim();
  if (!(c.pi * c.iota == SparseMatrix::identity(nh))) return "pi iota != id";
  if (!(c.iota * c.pi - SparseMatrix::identity(n) == m1 * c.kappa + c.kappa * m1))
    return "iota pi - id != m1 kappa + kappa m1";
  if (!(c.kappa * c.kappa).is_zero()) return "kappa^2 != 0";
  if (!(c.kappa * c.iota).is_zero()) return "kappa iota != 0";
  if (!(c.pi * c.kappa).is_zero()) return "pi kappa != 0";
  if (!(m1 * c.iota).is_zero()) return "m1 iota != 0";
  if (!(c.pi * m1).is_zero()) return "pi m1 != 0";
  return {};
}

Contraction identity_contraction(const SuperSpace& space) {
  Contraction c;
  c.homology = space;
  c.iota = SparseMatrix::identity(space.dim());
  c.pi = SparseMatrix::identity(space.dim());
  c.kappa = SparseMatrix(space.dim(), space.dim());
  return c;
}

namespace {

struct TransferResult {
  LInftyStructure minimal;
  std::vector<MultiMap> lambdas;
};

TransferResult run_transfer(const LInftyStructure& l, const Contraction& c, int up_to) {
  if (l.h_order != 1) throw MathError("transfer: structure must be over the ground field");
  if (up_to > l.arity_cap()) throw MathError("transfer: requested arity exceeds the arity cap of the structure");
  const auto& hp = c.homology.parity;
  const std::size_t nh = c.homology.dim(), n = l.dim();

  TransferResult out;
  out.minimal.space = c.homology;
  out.minimal.brackets.push_back(MultiMap{1, 1, nh, {}});
  out.lambdas.push_back(MultiMap{1, 0, n, {}});
  for (std::size_t i = 0; i < nh; ++i) {
    Vec v = c.iota.column_vec(i);
    if (!is_zero(v)) out.lambdas[0].table.emplace(Key{static_cast<std::uint16_t>(i)}, v);
  }

  for (int ar = 2; ar <= up_to; ++ar) {
    MultiMap lam{ar, 0, n, {}}, br{ar, 1, nh, {}};
    for (const auto& key : multisets(hp, ar)) {
      std::vector<int> kp;
      for (auto k : key) kp.push_back(hp[k]);
      Vec s = zero_vec(n);
      // Set partitions into at least two blocks, blocks ordered by minimum.
      std::vector<std::vector<std::size_t>> blocks;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == key.size()) {
          if (blocks.size() < 2) return;
          std::vector<Vec> args;
          std::vector<std::size_t> order;
          for (const auto& b : blocks) {
            Key bk;
            for (auto j : b) {
              bk.push_back(key[j]);
              order.push_back(j);
            }
            const Vec* v = out.lambdas[bk.size() - 1].find(bk);
            if (!v) return;
            args.push_back(*v);
          }
          Vec r = l.apply(static_cast<int>(blocks.size()), args);
          axpy(s, Scalar(koszul_sign(kp, order)), r);
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
      if (is_zero(s)) continue;
      Vec lv = c.kappa.apply(s);
      Vec bv = c.pi.apply(s);
      if (!is_zero(lv)) lam.table.emplace(key, std::move(lv));
      if (!is_zero(bv)) br.table.emplace(key, std::move(bv));
    }
    out.lambdas.push_back(std::move(lam));
    out.minimal.brackets.push_back(std::move(br));
  }
  return out;
}

}  // namespace

LInftyStructure transfer(const LInftyStructure& l, const Contraction& c, int up_to) {
  return run_transfer(l, c, up_to).minimal;
}

LInftyMorphism transfer_with_inclusion(const LInftyStructure& l, const Contraction& c, int up_to) {
  auto r = run_transfer(l, c, up_to);
  LInftyMorphism f;
  f.source = std::move(r.minimal);
  f.target = l;
  f.components = std::move(r.lambdas);
  return f;
}

bool is_homotopy_abelian_up_to(const LInftyStructure& l, int up_to) {
  auto m1 = l.differential();
  auto c = contraction_of(l.space, m1);
  auto t = transfer(l, c, up_to);
  for (const auto& b : t.brackets)
    if (!b.is_zero()) return false;
  return true;
}

}  // namespace bvinf
