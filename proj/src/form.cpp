#include "bilinv/form.hpp"

#include <string>

#include "bilinv/errors.hpp"

namespace bilinv {

BilinearForm::BilinearForm(int n, int k)
  : n_(n), k_(k)
{
  if (n < 1 || k < 1)
    throw DimensionError("form dimensions must be positive");
  entries_.assign(static_cast<std::size_t>(k * n * n), Rational(0));
}

BilinearForm::BilinearForm(int n, int k, const std::vector<std::vector<std::vector<Rational>>>& matrices)
  : BilinearForm(n, k)
{
  if (static_cast<int>(matrices.size()) != k)
    throw DimensionError("expected " + std::to_string(k) + " matrices");
  for (int alpha = 1; alpha <= k; ++alpha) {
    const auto& m = matrices[static_cast<std::size_t>(alpha - 1)];
    if (static_cast<int>(m.size()) != n)
      throw DimensionError("matrix row count differs from n");
    for (int i = 1; i <= n; ++i) {
      if (static_cast<int>(m[static_cast<std::size_t>(i - 1)].size()) != n)
        throw DimensionError("matrix column count differs from n");
      for (int j = 1; j <= n; ++j)
        at(alpha, i, j) = m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
  }
}

std::size_t BilinearForm::offset(int alpha, int i, int j) const
{
  if (alpha < 1 || alpha > k_ || i < 1 || i > n_ || j < 1 || j > n_)
    throw DimensionError("form index out of range");
  return form_variable_index(n_, alpha, i, j);
}

} // namespace bilinv
