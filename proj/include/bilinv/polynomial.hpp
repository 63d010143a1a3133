#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bilinv/form.hpp"
#include "bilinv/rational.hpp"

namespace bilinv {

/// Ordered variable names: `names` for serialization, `pretty` for display.
struct VariableSet {
  std::vector<std::string> names;
  std::vector<std::string> pretty;

  std::size_t size() const { return names.size(); }
  friend bool operator==(const VariableSet& a, const VariableSet& b) { return a.names == b.names; }
};

using VariableSetPtr = std::shared_ptr<const VariableSet>;

/// The k*n*n variables b^alpha_{ij}, named "b[alpha][i][j]" and displayed as "b_{ij}^alpha".
VariableSetPtr form_variables(int n, int k);
/// Variables x1..xm, for tests and generic use.
VariableSetPtr generic_variables(std::size_t count, const std::string& prefix = "x");

using Monomial = std::vector<unsigned>;

/// Graded lexicographic order, largest first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class SparsePolynomial {
public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  SparsePolynomial() = default;
  explicit SparsePolynomial(VariableSetPtr vars);

  static SparsePolynomial constant(VariableSetPtr vars, const Rational& c);
  static SparsePolynomial variable(VariableSetPtr vars, std::size_t index);

  const VariableSetPtr& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  /// Adds c * m; zero results are erased.
  void add_term(const Monomial& m, const Rational& c);

  Rational evaluate(std::span<const Rational> values) const;

  SparsePolynomial& operator+=(const SparsePolynomial& other);
  SparsePolynomial& operator-=(const SparsePolynomial& other);
  SparsePolynomial& operator*=(const SparsePolynomial& other);
  SparsePolynomial& operator*=(const Rational& c);
  SparsePolynomial operator-() const;

private:
  void check_same_variables(const SparsePolynomial& other) const;

  VariableSetPtr vars_;
  TermMap terms_;
};

SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b);
SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b);
SparsePolynomial operator*(SparsePolynomial a, const SparsePolynomial& b);
SparsePolynomial operator*(const Rational& c, SparsePolynomial p);

/// Exact coefficientwise equality. Throws DimensionError when the variable sets differ.
bool poly_equal(const SparsePolynomial& p, const SparsePolynomial& q);

/// One string per term in canonical order, e.g. "-8b_{12}^1 b_{21}^1 b_{11}^2 b_{22}^2".
/// Powers are written as repeated factors.
std::vector<std::string> pretty_terms(const SparsePolynomial& p);
/// Terms joined with " + " / " - "; the zero polynomial prints as "0".
std::string to_pretty(const SparsePolynomial& p);

/// A x^2 + Bc xy + C y^2 with polynomial coefficients.
struct BinaryQuadratic {
  SparsePolynomial A;
  SparsePolynomial Bc;
  SparsePolynomial C;
};

/// det(x B1 + y B2) with B symbolic in b^alpha_{ij}. Throws DimensionError unless n = k = 2.
BinaryQuadratic pencil_determinant(int n, int k);
/// det(x B1 + y B2) for concrete entries; coefficients are constants over form_variables(2, 2).
BinaryQuadratic pencil_determinant(const BilinearForm& form);

SparsePolynomial discriminant(const BinaryQuadratic& q);

} // namespace bilinv
