#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "bilinv/rational.hpp"

namespace bilinv {

/// Sparse vector keyed by 0-based coordinate; zero entries are never stored.
using SparseVector = std::map<std::size_t, Rational>;
using DenseVector = std::vector<Rational>;

SparseVector to_sparse(const DenseVector& v);
DenseVector to_dense(const SparseVector& v, std::size_t size);

class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<DenseVector>& rows);
  /// Matrix whose columns are the given vectors.
  static RationalMatrix from_columns(const std::vector<DenseVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Rational& value);
  void add(std::size_t i, std::size_t j, const Rational& value);
  const SparseVector& row(std::size_t i) const { return rows_[i]; }

  DenseVector multiply(const DenseVector& x) const;
  RationalMatrix multiply(const RationalMatrix& other) const;
  RationalMatrix transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  std::vector<SparseVector> rows_;
  std::size_t cols_ = 0;
};

/// Incremental fraction-free row echelon form over the integers.
/// Rows are scaled to primitive integer vectors; each elimination step is
/// row <- (a/g) row - (b/g) pivot followed by content removal. A row's pivot
/// is its first nonzero column, and rows are processed in insertion order.
class RowEchelon {
public:
  explicit RowEchelon(std::size_t cols);

  /// Returns true when v is independent of the rows inserted so far.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }

  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivot_columns() const;
  /// Basis of the right kernel of the inserted rows, one vector per free column (ascending).
  std::vector<DenseVector> kernel_basis() const;

private:
  using IntRow = std::vector<std::pair<std::size_t, Integer>>;

  static IntRow primitive(const SparseVector& v);
  static void make_primitive(IntRow& row);
  static IntRow eliminate(const IntRow& row, const IntRow& pivot, std::size_t col);
  IntRow reduce(IntRow row) const;

  std::size_t cols_;
  std::map<std::size_t, IntRow> pivots_;
};

std::size_t rank(const RationalMatrix& m);
std::vector<DenseVector> kernel_basis(const RationalMatrix& m);
/// Exact membership of v in span(basis). Throws DimensionError on length mismatch.
bool in_span(const DenseVector& v, const std::vector<DenseVector>& basis);

Rational determinant(const RationalMatrix& m);
/// Throws std::domain_error when m is singular.
RationalMatrix inverse(const RationalMatrix& m);

} // namespace bilinv
