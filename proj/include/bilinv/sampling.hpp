#pragma once

#include <random>

#include "bilinv/invariants.hpp"
#include "bilinv/relations.hpp"

namespace bilinv {

using Rng = std::mt19937_64;

Permutation random_permutation(int degree, Rng& rng);
/// Uniform over (sigma, eta) pairs; requires the gate.
GeneratorId random_generator(int n, int k, int r, Rng& rng);
/// Integer entries drawn from [-bound, bound].
BilinearForm random_form(int n, int k, Rng& rng, int bound = 5);
/// Integer matrix with nonzero determinant, entries in [-bound, bound].
RationalMatrix random_invertible(std::size_t size, Rng& rng, int bound = 3);
/// A base permutation of the given degree with `block_size + 1` sorted random slots.
ShuffleSpec random_shuffle_spec(int degree, int block_size, Rng& rng);

} // namespace bilinv
