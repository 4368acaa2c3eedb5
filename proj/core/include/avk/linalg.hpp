#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "avk/nupoly.hpp"
#include "avk/scalar.hpp"

namespace avk {

/// Sparse vector over Q: entries sorted by index, zeros never stored.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> entries);

  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t leading_index() const { return entries_.front().first; }
  const Scalar& leading_value() const { return entries_.front().second; }

  Scalar get(std::size_t index) const;
  void set(std::size_t index, Scalar value);
  void add(std::size_t index, const Scalar& value);

  /// this += a * x
  void axpy(const Scalar& a, const SparseVector& x);
  void scale(const Scalar& s);
  Scalar dot(const SparseVector& o) const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  void set(std::size_t r, std::size_t c, Scalar v);
  Scalar get(std::size_t r, std::size_t c) const { return rows_.at(r).get(c); }
  const SparseVector& row(std::size_t r) const { return rows_.at(r); }
  void set_row(std::size_t r, SparseVector v);
  std::size_t append_row(SparseVector v);

  /// Matrix-vector product.
  SparseVector apply(const SparseVector& x) const;

 private:
  std::size_t cols_;
  std::vector<SparseVector> rows_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseVector> kernel;  ///< basis of {x : m x = 0}
  std::vector<std::size_t> pivot_columns;
};

/// Rank and right kernel by fraction-free (integer, content-reduced)
/// Gauss-Jordan elimination with a Markowitz-style pivot choice.
RankKernel rank_and_kernel(const SparseMatrix& m);

/// Incrementally maintained row-echelon basis of a subspace of Q^n.
/// Each stored row has leading entry 1 at a distinct pivot index.
class Subspace {
 public:
  std::size_t dim() const { return rows_.size(); }

  /// Reduces v against the stored rows; the residual is zero iff v is in the span.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  /// Adds v if it is independent; returns whether the dimension grew.
  bool add(const SparseVector& v);

  /// Fully reduced basis (each pivot column is zero in all other rows),
  /// ordered by pivot index.
  std::vector<SparseVector> reduced_basis() const;
  std::vector<std::size_t> pivots() const;
  const std::map<std::size_t, SparseVector>& rows() const { return rows_; }

 private:
  std::map<std::size_t, SparseVector> rows_;
};

/// Rows of the reduced row-echelon form of the span of `rows`.
std::vector<SparseVector> rref(const std::vector<SparseVector>& rows);

/// Dense matrix with entries in Q[nu].
class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const NuPoly& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  NuPoly& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  /// Specializes nu to a rational value.
  SparseMatrix substitute(const Scalar& value) const;

 private:
  std::size_t rows_, cols_;
  std::vector<NuPoly> data_;
};

struct FunctionFieldRank {
  std::size_t generic_rank = 0;
  /// Rational nu-values where the rank drops below generic, ascending; each
  /// one verified by substitution.
  std::vector<Scalar> exceptional;
  /// A nonzero maximal minor (over Q(nu)) whose roots contain every exceptional value.
  NuPoly witness_minor;
  /// The witness minor has a factor with no rational roots.
  bool irrational_candidate_factor = false;
};

/// Generic rank over Q(nu) and the rational specializations where it drops.
/// Throws kEmptyMatrix when the matrix has no rows or no columns.
FunctionFieldRank rank_over_function_field(const PolyMatrix& m);

}  // namespace avk
