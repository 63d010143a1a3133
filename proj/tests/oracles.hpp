#pragma once

// Brute-force reference computations. Nothing here calls into the library's
// tensor, polynomial or elimination code; they only share Permutation and Rational.

#include <map>
#include <numeric>
#include <vector>

#include "bilinv/permutation.hpp"
#include "bilinv/rational.hpp"

namespace oracle {

using bilinv::Permutation;
using bilinv::Rational;
using Index = std::vector<int>;

// Levi-Civita symbol by inversion counting; 0 unless values are a permutation of 1..m.
inline int levi_civita(const std::vector<int>& values)
{
  const int m = static_cast<int>(values.size());
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int v : values) {
    if (v < 1 || v > m || seen[static_cast<std::size_t>(v)])
      return 0;
    seen[static_cast<std::size_t>(v)] = true;
  }
  int inversions = 0;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)])
        ++inversions;
  return inversions % 2 ? -1 : 1;
}

// Product of epsilons; block t reads index positions sigma^{-1}((t-1)m+1 .. tm).
inline int epsilon_product(const Index& idx, int m, const Permutation& sigma)
{
  const int total = static_cast<int>(idx.size());
  std::vector<int> inverse(static_cast<std::size_t>(total) + 1);
  for (int s = 1; s <= total; ++s)
    inverse[static_cast<std::size_t>(sigma(s))] = s;
  int sign = 1;
  for (int t = 0; t < total / m; ++t) {
    std::vector<int> block;
    for (int p = t * m + 1; p <= (t + 1) * m; ++p)
      block.push_back(idx[static_cast<std::size_t>(inverse[static_cast<std::size_t>(p)] - 1)]);
    sign *= levi_civita(block);
    if (sign == 0)
      return 0;
  }
  return sign;
}

// Calls f(idx) for every idx in [1..dim]^length, lexicographically.
template <typename F>
void for_each_index(int dim, int length, F&& f)
{
  Index idx(static_cast<std::size_t>(length), 1);
  for (;;) {
    f(static_cast<const Index&>(idx));
    int pos = length - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == dim)
      idx[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0)
      return;
    ++idx[static_cast<std::size_t>(pos)];
  }
}

// Dense epsilon tensor over [1..dim]^total, nonzero entries only.
inline std::map<Index, int> epsilon_tensor(int dim, int total, const Permutation& sigma)
{
  std::map<Index, int> out;
  for_each_index(dim, total, [&](const Index& idx) {
    if (int s = epsilon_product(idx, dim, sigma))
      out[idx] = s;
  });
  return out;
}

// Polynomial as exponent vector -> coefficient over the (alpha, i, j) variable order.
using Poly = std::map<std::vector<unsigned>, Rational>;

// Full sum over every (I, J) of eps^I eps_J prod_t b^{J_t}_{I_{2t-1} I_{2t}}.
inline Poly invariant_polynomial(int n, int k, int r, const Permutation& sigma, const Permutation& eta)
{
  Poly out;
  const std::size_t vars = static_cast<std::size_t>(k * n * n);
  for_each_index(n, 2 * r, [&](const Index& I) {
    const int si = epsilon_product(I, n, sigma);
    if (si == 0)
      return;
    for_each_index(k, r, [&](const Index& J) {
      const int sj = epsilon_product(J, k, eta);
      if (sj == 0)
        return;
      std::vector<unsigned> exps(vars, 0);
      for (int t = 0; t < r; ++t) {
        const int alpha = J[static_cast<std::size_t>(t)];
        const int i = I[static_cast<std::size_t>(2 * t)];
        const int j = I[static_cast<std::size_t>(2 * t + 1)];
        ++exps[static_cast<std::size_t>(((alpha - 1) * n + (i - 1)) * n + (j - 1))];
      }
      out[exps] += si * sj;
    });
  });
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

using Matrix = std::vector<std::vector<Rational>>;

// Row reduction over the rationals; returns the rank.
inline std::size_t rank(Matrix m)
{
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.size() && m[pivot][c] == 0)
      ++pivot;
    if (pivot == m.size())
      continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Leibniz expansion.
inline Rational determinant(const Matrix& m)
{
  const int size = static_cast<int>(m.size());
  Rational total = 0;
  bilinv::for_each_permutation(size, [&](const Permutation& p) {
    Rational term = bilinv::parity(p);
    for (int i = 1; i <= size; ++i)
      term *= m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(p(i) - 1)];
    total += term;
  });
  return total;
}

// Number of ways to split `total` labelled slots into unordered blocks of size m.
inline unsigned long long pairings(int m, int total)
{
  if (total == 0)
    return 1;
  // The block holding the smallest label picks m-1 companions from the rest.
  unsigned long long choose = 1;
  for (int i = 1; i <= m - 1; ++i)
    choose = choose * static_cast<unsigned long long>(total - i) / static_cast<unsigned long long>(i);
  return choose * pairings(m, total - m);
}

} // namespace oracle
