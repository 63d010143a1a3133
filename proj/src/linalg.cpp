#include "bilinv/linalg.hpp"

#include <stdexcept>

#include "bilinv/errors.hpp"

namespace bilinv {

SparseVector to_sparse(const DenseVector& v)
{
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i]))
      out.emplace(i, v[i]);
  return out;
}

DenseVector to_dense(const SparseVector& v, std::size_t size)
{
  DenseVector out(size, Rational(0));
  for (const auto& [i, c] : v) {
    if (i >= size)
      throw DimensionError("sparse coordinate beyond vector size");
    out[i] = c;
  }
  return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
  : rows_(rows), cols_(cols)
{
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, 1);
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<DenseVector>& rows)
{
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw DimensionError("ragged matrix rows");
    m.rows_[i] = to_sparse(rows[i]);
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<DenseVector>& columns, std::size_t rows)
{
  RationalMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows)
      throw DimensionError("column length differs from row count");
    for (std::size_t i = 0; i < rows; ++i)
      m.set(i, j, columns[j][i]);
  }
  return m;
}

Rational RationalMatrix::at(std::size_t i, std::size_t j) const
{
  if (i >= rows_.size() || j >= cols_)
    throw DimensionError("matrix index out of range");
  auto it = rows_[i].find(j);
  return it == rows_[i].end() ? Rational(0) : it->second;
}

void RationalMatrix::set(std::size_t i, std::size_t j, const Rational& value)
{
  if (i >= rows_.size() || j >= cols_)
    throw DimensionError("matrix index out of range");
  if (is_zero(value))
    rows_[i].erase(j);
  else
    rows_[i][j] = value;
}

void RationalMatrix::add(std::size_t i, std::size_t j, const Rational& value)
{
  set(i, j, at(i, j) + value);
}

DenseVector RationalMatrix::multiply(const DenseVector& x) const
{
  if (x.size() != cols_)
    throw DimensionError("vector length differs from column count");
  DenseVector y(rows_.size(), Rational(0));
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, c] : rows_[i])
      y[i] += c * x[j];
  return y;
}

RationalMatrix RationalMatrix::multiply(const RationalMatrix& other) const
{
  if (other.rows() != cols_)
    throw DimensionError("inner matrix dimensions differ");
  RationalMatrix out(rows(), other.cols());
  for (std::size_t i = 0; i < rows(); ++i) {
    SparseVector acc;
    for (const auto& [l, c] : rows_[i])
      for (const auto& [j, d] : other.rows_[l])
        acc[j] += c * d;
    for (const auto& [j, v] : acc)
      if (!is_zero(v))
        out.rows_[i].emplace(j, v);
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const
{
  RationalMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& [j, c] : rows_[i])
      t.rows_[j].emplace(i, c);
  return t;
}

RowEchelon::RowEchelon(std::size_t cols)
  : cols_(cols)
{
}

void RowEchelon::make_primitive(IntRow& row)
{
  if (row.empty())
    return;
  Integer g = 0;
  for (const auto& [col, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1)
      break;
  }
  if (sgn(row.front().second) < 0)
    g = -g;
  if (g != 1)
    for (auto& entry : row)
      mpz_divexact(entry.second.get_mpz_t(), entry.second.get_mpz_t(), g.get_mpz_t());
}

RowEchelon::IntRow RowEchelon::primitive(const SparseVector& v)
{
  Integer denominator_lcm = 1;
  for (const auto& [col, c] : v)
    mpz_lcm(denominator_lcm.get_mpz_t(), denominator_lcm.get_mpz_t(), c.get_den_mpz_t());
  IntRow row;
  row.reserve(v.size());
  for (const auto& [col, c] : v) {
    if (is_zero(c))
      continue;
    Integer scaled = c.get_num() * (denominator_lcm / c.get_den());
    row.emplace_back(col, std::move(scaled));
  }
  make_primitive(row);
  return row;
}

RowEchelon::IntRow RowEchelon::eliminate(const IntRow& row, const IntRow& pivot, std::size_t col)
{
  // row <- (a/g) row - (b/g) pivot, where a is the pivot entry and b the row entry at col.
  const Integer* b = nullptr;
  for (const auto& [c, v] : row)
    if (c == col) {
      b = &v;
      break;
    }
  if (b == nullptr)
    return row;
  const Integer& a = pivot.front().second;
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b->get_mpz_t());
  Integer fa = a / g, fb = *b / g;

  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, fa * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -fb * pivot[j].second);
      ++j;
    } else {
      Integer v = fa * row[i].second - fb * pivot[j].second;
      if (v != 0)
        out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

RowEchelon::IntRow RowEchelon::reduce(IntRow row) const
{
  while (!row.empty()) {
    auto it = pivots_.find(row.front().first);
    if (it == pivots_.end())
      break;
    row = eliminate(row, it->second, it->first);
  }
  return row;
}

bool RowEchelon::insert(const SparseVector& v)
{
  for (const auto& [col, c] : v)
    if (col >= cols_)
      throw DimensionError("row coordinate beyond echelon width");
  IntRow row = reduce(primitive(v));
  if (row.empty())
    return false;
  std::size_t col = row.front().first;
  pivots_.emplace(col, std::move(row));
  return true;
}

bool RowEchelon::contains(const SparseVector& v) const
{
  for (const auto& [col, c] : v)
    if (col >= cols_)
      throw DimensionError("vector coordinate beyond echelon width");
  return reduce(primitive(v)).empty();
}

std::vector<std::size_t> RowEchelon::pivot_columns() const
{
  std::vector<std::size_t> out;
  for (const auto& [col, row] : pivots_)
    out.push_back(col);
  return out;
}

std::vector<DenseVector> RowEchelon::kernel_basis() const
{
  // Back-substitute to reduced form: each pivot row becomes zero at every other pivot column.
  std::map<std::size_t, IntRow> reduced = pivots_;
  for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
    const std::size_t col = it->first;
    for (auto& [other_col, other] : reduced) {
      if (other_col >= col)
        break;
      other = eliminate(other, it->second, col);
    }
  }

  std::vector<bool> is_pivot(cols_, false);
  for (const auto& [col, row] : reduced)
    is_pivot[col] = true;

  std::vector<DenseVector> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free])
      continue;
    DenseVector x(cols_, Rational(0));
    x[free] = 1;
    for (const auto& [col, row] : reduced) {
      for (const auto& [c, v] : row)
        if (c == free) {
          x[col] = Rational(-v, row.front().second);
          x[col].canonicalize();
          break;
        }
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank(const RationalMatrix& m)
{
  RowEchelon e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    e.insert(m.row(i));
  return e.rank();
}

std::vector<DenseVector> kernel_basis(const RationalMatrix& m)
{
  RowEchelon e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    e.insert(m.row(i));
  return e.kernel_basis();
}

bool in_span(const DenseVector& v, const std::vector<DenseVector>& basis)
{
  RowEchelon e(v.size());
  for (const auto& b : basis) {
    if (b.size() != v.size())
      throw DimensionError("basis vector length differs from query vector");
    e.insert(to_sparse(b));
  }
  return e.contains(to_sparse(v));
}

namespace {

std::vector<DenseVector> dense_rows(const RationalMatrix& m)
{
  std::vector<DenseVector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i)
    rows.push_back(to_dense(m.row(i), m.cols()));
  return rows;
}

} // namespace

Rational determinant(const RationalMatrix& m)
{
  if (m.rows() != m.cols())
    throw DimensionError("determinant of a non-square matrix");
  auto a = dense_rows(m);
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c]))
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a[i][c]))
        continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j)
        a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& m)
{
  if (m.rows() != m.cols())
    throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto a = dense_rows(m);
  auto inv = dense_rows(RationalMatrix::identity(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c]))
      ++p;
    if (p == n)
      throw std::domain_error("matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational scale = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= scale;
      inv[c][j] *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(a[i][c]))
        continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return RationalMatrix::from_rows(inv);
}

} // namespace bilinv
