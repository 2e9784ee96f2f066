#include "bvinf/exactlin.hpp"

#include <algorithm>
#include <sstream>

namespace bvinf {

Scalar parse_scalar(const std::string& text) {
  auto bad = [&] { return InputError("malformed rational \"" + text + "\""); };
  if (text.empty()) throw bad();
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw InputError("zero denominator in rational \"" + text + "\"");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& s) { return s.get_str(); }

Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s == 0; });
}

Vec& axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (a == 0) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] += a * x[i];
  return y;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vec operator*(const Scalar& s, const Vec& v) {
  Vec r = v;
  for (auto& x : r) x *= s;
  return r;
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

// ---------------------------------------------------------------------------

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i][i] = 1;
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vec>& rows, std::size_t cols) {
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rows[r][c] != 0) m.data_[c][r] = rows[r][c];
  return m;
}

SparseMatrix SparseMatrix::from_columns(const std::vector<Vec>& cols, std::size_t rows) {
  SparseMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (cols[c][r] != 0) m.data_[c][r] = cols[c][r];
  return m;
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
  auto it = data_[c].find(r);
  return it == data_[c].end() ? Scalar(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::set index out of range");
  if (v == 0)
    data_[c].erase(r);
  else
    data_[c][r] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (v == 0) return;
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix::add index out of range");
  auto [it, inserted] = data_[c].emplace(r, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) data_[c].erase(it);
  }
}

Vec SparseMatrix::column_vec(std::size_t c) const {
  Vec v = zero_vec(rows_);
  for (const auto& [r, x] : data_[c]) v[r] = x;
  return v;
}

Vec SparseMatrix::apply(const Vec& x) const {
  Vec y = zero_vec(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (x[c] == 0) continue;
    for (const auto& [r, v] : data_[c]) y[r] += v * x[c];
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& [r, v] : data_[c]) t.data_[r][c] = v;
  return t;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Column& c) { return c.empty(); });
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

std::vector<Vec> SparseMatrix::to_dense() const {
  std::vector<Vec> rows(rows_, zero_vec(cols_));
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& [r, v] : data_[c]) rows[r][c] = v;
  return rows;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
  SparseMatrix p(rows_, o.cols_);
  for (std::size_t c = 0; c < o.cols_; ++c) {
    auto& out = p.data_[c];
    for (const auto& [k, b] : o.data_[c])
      for (const auto& [r, a] : data_[k]) {
        auto [it, inserted] = out.emplace(r, a * b);
        if (!inserted) it->second += a * b;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  }
  return p;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("SparseMatrix: dimension mismatch in sum");
  SparseMatrix s = *this;
  for (std::size_t c = 0; c < cols_; ++c)
    for (const auto& [r, v] : o.data_[c]) s.add(r, c, v);
  return s;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const { return *this + o.scaled(-1); }

SparseMatrix SparseMatrix::scaled(const Scalar& s) const {
  if (s == 0) return SparseMatrix(rows_, cols_);
  SparseMatrix m = *this;
  for (auto& col : m.data_)
    for (auto& [r, v] : col) v *= s;
  return m;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> rref(std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Scalar inv = 1 / rows[r][c];
    for (std::size_t k = c; k < cols; ++k)
      if (rows[r][k] != 0) rows[r][k] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Scalar f = rows[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (rows[r][k] != 0) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(const SparseMatrix& m) {
  // Eliminate along the smaller side.
  if (m.rows() <= m.cols()) {
    auto rows = m.to_dense();
    return rref(rows, m.cols()).size();
  }
  auto rows = m.transpose().to_dense();
  return rref(rows, m.rows()).size();
}

std::size_t rank(std::vector<Vec> vectors) {
  if (vectors.empty()) return 0;
  std::size_t n = vectors.front().size();
  return rref(vectors, n).size();
}

KernelImage kernel_image(const SparseMatrix& m) {
  KernelImage out;
  auto rows = m.to_dense();
  auto pivots = rref(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec k = zero_vec(m.cols());
    k[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k[pivots[i]] = -rows[i][f];
    out.kernel.push_back(std::move(k));
  }
  auto trows = m.transpose().to_dense();
  rref(trows, m.rows());
  out.image = std::move(trows);
  return out;
}

// ---------------------------------------------------------------------------

Coordinates::Coordinates(std::vector<Vec> basis, std::size_t ambient)
    : basis_(std::move(basis)), ambient_(ambient) {
  const std::size_t k = basis_.size();
  if (k == 0) return;
  // Row-reduce [B^T | I]; the transform G restricted to the pivot columns of B^T
  // inverts the square block B[P,:].
  std::vector<Vec> aug(k, zero_vec(ambient_ + k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < ambient_; ++j) aug[i][j] = basis_[i][j];
    aug[i][ambient_ + i] = 1;
  }
  auto pivots = rref(aug, ambient_ + k);
  std::size_t independent = 0;
  for (auto p : pivots)
    if (p < ambient_) ++independent;
  if (independent != k) throw MathError("Coordinates: basis is linearly dependent");
  pivot_rows_.assign(pivots.begin(), pivots.begin() + static_cast<long>(k));
  inverse_.assign(k, zero_vec(k));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) inverse_[i][j] = aug[j][ambient_ + i];
}

std::optional<Vec> Coordinates::solve(const Vec& v) const {
  const std::size_t k = basis_.size();
  Vec c = zero_vec(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (inverse_[i][j] != 0 && v[pivot_rows_[j]] != 0) c[i] += inverse_[i][j] * v[pivot_rows_[j]];
  Vec check = zero_vec(ambient_);
  for (std::size_t i = 0; i < k; ++i) axpy(check, c[i], basis_[i]);
  if (check != v) return std::nullopt;
  return c;
}

namespace {

// Incremental echelon basis used to extend a family greedily.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n) : n_(n) {}
  bool add(const Vec& v) {
    Vec w = v;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (w[pivots_[i]] != 0) axpy(w, -w[pivots_[i]], rows_[i]);
    std::size_t p = 0;
    while (p < n_ && w[p] == 0) ++p;
    if (p == n_) return false;
    Scalar inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i][p] != 0) axpy(rows_[i], -rows_[i][p], w);
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

Vec SubquotientSpace::project(const Vec& cycle) const {
  auto c = coords.solve(cycle);
  if (!c) throw MathError("SubquotientSpace::project: vector is not a cycle");
  return Vec(c->begin() + static_cast<long>(image.size()), c->end());
}

SubquotientSpace homology(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw std::invalid_argument("homology: incompatible maps");
  if (!(d_out * d_in).is_zero()) throw MathError("homology: composite d_out*d_in is nonzero");
  SubquotientSpace h;
  h.ambient = d_out.cols();
  h.kernel = kernel_image(d_out).kernel;
  h.image = kernel_image(d_in).image;
  EchelonBasis ech(h.ambient);
  for (const auto& v : h.image) ech.add(v);
  for (const auto& v : h.kernel)
    if (ech.add(v)) h.section.push_back(v);
  std::vector<Vec> all = h.image;
  all.insert(all.end(), h.section.begin(), h.section.end());
  h.coords = Coordinates(std::move(all), h.ambient);
  return h;
}

// ---------------------------------------------------------------------------

bool BlockInvariants::is_free(int truncation) const {
  return std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == truncation; });
}

std::string BlockInvariants::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
  os << '}';
  return os.str();
}

BlockInvariants block_invariants(const TruncModule& module) {
  const std::size_t n = module.dim();
  const int N = module.truncation;
  if (N < 1) throw MathError("block_invariants: truncation order must be >= 1");
  BlockInvariants out;
  out.rank_sequence.push_back(n);
  SparseMatrix power = SparseMatrix::identity(n);
  for (int j = 1; j <= N + 1; ++j) {
    power = module.h_action * power;
    out.rank_sequence.push_back(rank(power));
  }
  if (out.rank_sequence[static_cast<std::size_t>(N)] != 0)
    throw MathError("block_invariants: h^N does not vanish on the module");
  const auto& r = out.rank_sequence;
  for (int j = N; j >= 1; --j) {
    long mult = static_cast<long>(r[j - 1]) - 2 * static_cast<long>(r[j]) + static_cast<long>(r[j + 1]);
    for (long m = 0; m < mult; ++m) out.sizes.push_back(j);
  }
  return out;
}

}  // namespace bvinf
