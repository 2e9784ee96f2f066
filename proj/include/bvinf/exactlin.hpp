#pragma once

// Exact rational linear algebra: sparse matrices, kernels and images,
// homology of two-term complexes, and block invariants of modules over
// truncated polynomial rings k[h]/(h^N).

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bvinf {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

/// Raised when a mathematical precondition of an operation is violated.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed input (files, expressions, rationals).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" into a canonical rational. Throws InputError on a zero
/// denominator or garbage.
Scalar parse_scalar(const std::string& text);
/// Canonical "p/q" (or "p" when the denominator is 1).
std::string format_scalar(const Scalar& s);

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);
Vec& axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a*x
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& s, const Vec& v);
Vec unit_vec(std::size_t n, std::size_t i);

/// Column-major sparse matrix; no stored zeros.
class SparseMatrix {
 public:
  using Column = std::map<std::size_t, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<Vec>& rows, std::size_t cols);
  /// Matrix whose j-th column is cols[j].
  static SparseMatrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  const Column& column(std::size_t c) const { return data_[c]; }
  Vec column_vec(std::size_t c) const;

  Vec apply(const Vec& x) const;
  SparseMatrix transpose() const;
  bool is_zero() const;
  std::size_t nnz() const;
  std::vector<Vec> to_dense() const;

  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Scalar& s) const;
  bool operator==(const SparseMatrix& o) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> data_;
};

/// Reduced row echelon form computed in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<Vec>& rows, std::size_t cols);

std::size_t rank(const SparseMatrix& m);
std::size_t rank(std::vector<Vec> vectors);

struct KernelImage {
  std::vector<Vec> kernel;  // basis of ker M (in the source)
  std::vector<Vec> image;   // basis of im M (in the target)
};
KernelImage kernel_image(const SparseMatrix& m);

/// Coordinates with respect to a fixed linearly independent family.
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(std::vector<Vec> basis, std::size_t ambient);
  /// Coefficients c with sum c_i basis_i == v, or nullopt if v is outside the span.
  std::optional<Vec> solve(const Vec& v) const;
  std::size_t size() const { return basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

 private:
  std::vector<Vec> basis_;
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivot_rows_;
  std::vector<Vec> inverse_;  // inverse of the square pivot block
};

/// ker / im with a chosen section: quotient identified with span(section).
struct SubquotientSpace {
  std::size_t ambient = 0;
  std::vector<Vec> kernel;
  std::vector<Vec> image;
  std::vector<Vec> section;  // complement of image inside kernel
  Coordinates coords;        // coordinates w.r.t. image ++ section

  std::size_t dim() const { return section.size(); }
  /// Class of a kernel vector in the section basis.
  Vec project(const Vec& cycle) const;
};

/// Homology of  . --d_in--> V --d_out--> .  Throws MathError if d_out*d_in != 0.
SubquotientSpace homology(const SparseMatrix& d_in, const SparseMatrix& d_out);

/// A finite-dimensional k[h]/(h^N)-module given by the matrix of h.
struct TruncModule {
  int truncation = 1;
  SparseMatrix h_action;
  std::size_t dim() const { return h_action.rows(); }
};

/// Sizes of the indecomposable summands k[h]/(h^j), largest first.
struct BlockInvariants {
  std::vector<int> sizes;
  std::vector<std::size_t> rank_sequence;  // rank(h^j), j = 0, 1, ...
  bool is_free(int truncation) const;
  std::string to_string() const;
};

/// Throws MathError if h^N != 0.
BlockInvariants block_invariants(const TruncModule& module);

}  // namespace bvinf
