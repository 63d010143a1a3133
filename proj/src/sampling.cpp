#include "bilinv/sampling.hpp"

#include <algorithm>
#include <numeric>

namespace bilinv {

Permutation random_permutation(int degree, Rng& rng)
{
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

GeneratorId random_generator(int n, int k, int r, Rng& rng)
{
  auto sigma = random_permutation(2 * r, rng);
  auto eta = random_permutation(r, rng);
  return GeneratorId(n, k, r, std::move(sigma), std::move(eta));
}

BilinearForm random_form(int n, int k, Rng& rng, int bound)
{
  std::uniform_int_distribution<int> entry(-bound, bound);
  BilinearForm form(n, k);
  for (int a = 1; a <= k; ++a)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        form.at(a, i, j) = entry(rng);
  return form;
}

RationalMatrix random_invertible(std::size_t size, Rng& rng, int bound)
{
  std::uniform_int_distribution<int> entry(-bound, bound);
  for (;;) {
    RationalMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        m.set(i, j, entry(rng));
    if (!is_zero(determinant(m)))
      return m;
  }
}

ShuffleSpec random_shuffle_spec(int degree, int block_size, Rng& rng)
{
  std::vector<int> labels(static_cast<std::size_t>(degree));
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  labels.resize(static_cast<std::size_t>(block_size + 1));
  return ShuffleSpec(random_permutation(degree, rng), std::move(labels));
}

} // namespace bilinv
