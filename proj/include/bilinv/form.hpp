#pragma once

#include <span>
#include <vector>

#include "bilinv/rational.hpp"

namespace bilinv {

/// A bilinear map V x V -> W as k matrices B^alpha (alpha = 1..k) of size n x n.
/// Entries are stored in (alpha, i, j) lexicographic order, matching the polynomial variables.
class BilinearForm {
public:
  BilinearForm() = default;
  BilinearForm(int n, int k);
  /// matrices[alpha-1][i-1][j-1]; throws DimensionError on ragged input.
  BilinearForm(int n, int k, const std::vector<std::vector<std::vector<Rational>>>& matrices);

  int n() const { return n_; }
  int k() const { return k_; }

  const Rational& at(int alpha, int i, int j) const { return entries_[offset(alpha, i, j)]; }
  Rational& at(int alpha, int i, int j) { return entries_[offset(alpha, i, j)]; }

  std::span<const Rational> values() const { return entries_; }

  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;

private:
  std::size_t offset(int alpha, int i, int j) const;

  int n_ = 0;
  int k_ = 0;
  std::vector<Rational> entries_;
};

/// Index of b^alpha_{ij} in the lexicographic (alpha, i, j) variable order; all 1-based inputs.
inline std::size_t form_variable_index(int n, int alpha, int i, int j)
{
  return static_cast<std::size_t>(((alpha - 1) * n + (i - 1)) * n + (j - 1));
}

} // namespace bilinv
