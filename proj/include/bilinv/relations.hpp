#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bilinv/invariants.hpp"

namespace bilinv {

enum class RelationKind { Trivial, TypeA, TypeB, Symmetrized };
/// Which tensor factor the relation lives on: V^{2r} only, W*^{r} only, or their product.
enum class RelationSide { V, W, Both };
/// Literal: built from the defining index formula. Shuffle: full antisymmetrization
/// of the chosen slots, used when the literal formula does not expand to zero.
enum class Construction { Literal, Shuffle };

const char* to_string(RelationKind kind);
const char* to_string(RelationSide side);
const char* to_string(Construction c);

struct RelationTerm {
  Rational coef;
  std::optional<Permutation> sigma;
  std::optional<Permutation> eta;
};

struct RelationCertificate {
  RelationKind kind = RelationKind::Trivial;
  RelationSide side = RelationSide::Both;
  Construction construction = Construction::Literal;
  int n = 0; ///< 0 when the relation has no V-side
  int k = 0; ///< 0 when the relation has no W-side
  int r = 0;
  std::vector<RelationTerm> terms;
  /// Symmetrized relations only: terms whose image under the symmetrizer vanishes.
  std::vector<RelationTerm> dropped;
  bool verified = false;
};

/// A base permutation and n+1 (or k+1) distinct slot labels, kept sorted.
struct ShuffleSpec {
  Permutation base;
  std::vector<int> slots;

  ShuffleSpec(Permutation base, std::vector<int> slots);
};

/// Sum_j (-1)^{j+1} v_{sigma_j} over the shuffles of spec, scaled so the base term has
/// coefficient +1 and comes first. Verified by zero expansion; falls back to the
/// antisymmetrized construction, and throws ConstructionError if neither vanishes.
RelationCertificate typeA_relation(int n, int r, const ShuffleSpec& spec);
/// Sum_j (-1)^j w^{eta_j}; same verification policy as typeA_relation.
RelationCertificate typeB_relation(int k, int r, const ShuffleSpec& spec);

/// t_p - s t_q = 0 for two permutations with equal block sets on one side.
/// Throws UsageError when the blocks differ.
RelationCertificate trivial_relation(RelationSide side, int block_size, const Permutation& p, const Permutation& q);

/// Every non-canonical permutation on each side paired with its class representative.
/// Throws SizeError when more than `limit` certificates would be produced.
std::vector<RelationCertificate> trivial_relations(int n, int k, int r, std::size_t limit = 1'000'000);

using RelationOperand = std::variant<RelationCertificate, Permutation>;

/// Tensors a one-sided relation with a single generator of the other side.
/// Throws UsageError unless exactly one operand is a relation of the matching side.
RelationCertificate combined_relation(int n, int k, const RelationOperand& v_part, const RelationOperand& w_part);

/// Replaces each term by its symmetrized image, dropping the ones that vanish,
/// and verifies the signed sum of polynomials is zero.
RelationCertificate symmetrized_relation(const RelationCertificate& c);

/// Term-by-term expansion through build_v / build_w / tensor_product.
SparseTensor expand(const RelationCertificate& c);
/// Signed sum of evaluate_polynomial over the terms; Both-sided relations only.
SparsePolynomial expand_polynomial(const RelationCertificate& c);

/// Recomputes the expansion and returns whether it vanishes.
bool verify(const RelationCertificate& c);
/// Verifies many certificates; OpenMP-parallel with results in input order.
std::vector<bool> verify_all(const std::vector<RelationCertificate>& certificates);

/// All (m+1)-subsets of {1..total} in lexicographic order.
std::vector<std::vector<int>> slot_subsets(int subset_size, int total);

struct KernelLevelReport {
  std::string level;            ///< "classes" or "raw"
  std::size_t columns = 0;      ///< number of generators
  std::size_t ambient_support = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  std::size_t relation_count = 0;
  std::size_t relation_span_dim = 0;
  std::size_t relations_outside_kernel = 0;
  std::vector<DenseVector> deficit; ///< kernel vectors not reached by the relations
  std::vector<std::string> column_labels;

  bool spanned() const { return relations_outside_kernel == 0 && deficit.empty(); }
};

struct KernelSpanReport {
  int n = 0;
  int k = 0;
  int r = 0;
  bool gate = false;
  bool truncated = false;
  std::string truncation_reason;
  std::optional<KernelLevelReport> classes;
  std::optional<KernelLevelReport> raw;

  bool spanned() const;
};

/// Compares the kernel of generators -> tensors with the span of the emitted relations.
/// The class level runs when the distinct-class count fits `budget`; the raw level
/// (all (2r)! r! permutation pairs) runs when that count fits too.
KernelSpanReport kernel_span_check(int n, int k, int r, std::size_t budget = 20'000);

namespace reference {

std::vector<bool> verify_all(const std::vector<RelationCertificate>& certificates);

} // namespace reference

} // namespace bilinv
