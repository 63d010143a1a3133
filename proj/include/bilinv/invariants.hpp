#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "bilinv/form.hpp"
#include "bilinv/linalg.hpp"
#include "bilinv/permutation.hpp"
#include "bilinv/polynomial.hpp"
#include "bilinv/tensor.hpp"

namespace bilinv {

/// True iff n | 2r and k | r.
bool existence_gate(int n, int k, int r);

/// Names the generator v_sigma (x) w^eta of degree r.
struct GeneratorId {
  int n = 0;
  int k = 0;
  int r = 0;
  Permutation sigma; ///< degree 2r
  Permutation eta;   ///< degree r

  GeneratorId() = default;
  /// Throws DivisibilityError when the gate fails, DomainError on degree mismatch.
  GeneratorId(int n, int k, int r, Permutation sigma, Permutation eta);

  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

using Block = std::vector<int>;

/// Sorted epsilon blocks of one side plus the sign picked up by sorting them.
struct SideBlocks {
  std::vector<Block> blocks;
  int sign = 1;

  friend bool operator==(const SideBlocks&, const SideBlocks&) = default;
};

/// Canonical blocks of the slot sets sigma^{-1}({(t-1)m+1..tm}); blocks ordered by least element.
SideBlocks canonical_blocks(int block_size, const Permutation& sigma);

/// The permutation whose inverse lists the blocks in order; its tensor has sign +1.
Permutation permutation_from_blocks(const std::vector<Block>& blocks);

/// Sign relating the epsilon tensors of p and q (t_p = sign * t_q), or nullopt when
/// their block sets differ and the tensors are not proportional.
std::optional<int> relative_sign(int block_size, const Permutation& p, const Permutation& q);

/// A generator modulo the column-swap sign rule.
struct BlockForm {
  std::vector<Block> v_blocks;
  std::vector<Block> w_blocks;
  int sign = 1;

  int n() const { return v_blocks.empty() ? 0 : static_cast<int>(v_blocks.front().size()); }
  int k() const { return w_blocks.empty() ? 0 : static_cast<int>(w_blocks.front().size()); }
  int r() const;

  bool same_class(const BlockForm& other) const
  {
    return v_blocks == other.v_blocks && w_blocks == other.w_blocks;
  }
  friend bool operator==(const BlockForm&, const BlockForm&) = default;
};

BlockForm canonicalize(const GeneratorId& g);
/// The canonical generator of the class; tensor(g) = form.sign * tensor(representative(form)).
GeneratorId representative(const BlockForm& form);

/// All partitions of {1..total} into sorted blocks of size m, ordered lexicographically.
std::vector<std::vector<Block>> block_partitions(int block_size, int total);

/// (ab)! / (a!^b b!) as an arbitrary-precision integer.
Integer partition_count(int block_size, int total);
/// M(2r, n) * M(r, k), or 0 when the gate fails.
Integer count_distinct(int n, int k, int r);

struct EnumerationResult {
  enum class Status { Complete, NoInvariants, Truncated };

  Status status = Status::Complete;
  std::vector<BlockForm> classes;

  bool invariants_exist() const { return status != Status::NoInvariants; }
};

/// One sign-normalized representative per class, v-blocks major, lexicographic.
EnumerationResult enumerate_distinct(int n, int k, int r,
                                     std::size_t limit = std::numeric_limits<std::size_t>::max());

/// v_sigma (x) w^eta over V^{2r} (x) W*^{r}.
SparseTensor generator_tensor(const GeneratorId& g);
SparseTensor generator_tensor(const BlockForm& form);

/// f^sigma_eta as a polynomial in b^alpha_{ij}, summed over the nonzero epsilon
/// assignments only. OpenMP-parallel over the V-side assignments.
SparsePolynomial evaluate_polynomial(const GeneratorId& g);
SparsePolynomial evaluate_polynomial(const BlockForm& form);

/// Polynomials for many generators at once; output order follows the input.
std::vector<SparsePolynomial> evaluate_batch(const std::vector<GeneratorId>& generators);

/// Pairing of a V^{2r} (x) W*^{r} tensor with b^{(x) r}: factor t reads V-axes 2t-1, 2t and W*-axis t.
SparsePolynomial contract_with_form_power(const SparseTensor& t, int n, int k, int r);
Rational contract_at(const SparseTensor& t, const BilinearForm& form);

/// Throws DimensionError when the form's (n, k) differ from the generator's.
Rational evaluate_at(const GeneratorId& g, const BilinearForm& form);

/// B'^alpha = sum_beta p[alpha][beta] (a^{-1})^T B^beta a^{-1}.
BilinearForm transform_form(const BilinearForm& form, const RationalMatrix& a, const RationalMatrix& p);

struct WeightCheckResult {
  bool pass = false;
  Rational transformed_value; ///< f(B')
  Rational predicted_value;   ///< det(a)^(-2r/n) det(p)^(r/k) f(B)
  Rational weight;            ///< det(a)^(-2r/n) det(p)^(r/k)
};

/// Relative-invariance check. Throws std::domain_error for singular a or p.
WeightCheckResult weight_check(const GeneratorId& g, const BilinearForm& form, const RationalMatrix& a,
                               const RationalMatrix& p);

namespace reference {

/// Single-threaded evaluation kept as the baseline for the parallel kernel.
SparsePolynomial evaluate_polynomial(const GeneratorId& g);
std::vector<SparsePolynomial> evaluate_batch(const std::vector<GeneratorId>& generators);

} // namespace reference

} // namespace bilinv
