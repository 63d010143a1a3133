#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "bilinv/permutation.hpp"
#include "bilinv/rational.hpp"

namespace bilinv {

enum class AxisKind { V, WDual };

struct Axis {
  AxisKind kind = AxisKind::V;
  int dim = 1;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// Ordered list of tensor factors. The packed index space must fit in 63 bits.
class AxisProfile {
public:
  AxisProfile() = default;
  explicit AxisProfile(std::vector<Axis> axes);

  static AxisProfile repeated(AxisKind kind, int dim, int count);
  /// (V, V, W*) repeated r times; axes 3t-2, 3t-1, 3t form triple t.
  static AxisProfile triples(int n, int k, int r);

  std::size_t order() const { return axes_.size(); }
  const Axis& operator[](std::size_t i) const { return axes_[i]; }
  const std::vector<Axis>& axes() const { return axes_; }

  /// True when the profile is `groups` copies of one block of `group_size` axes.
  bool is_repeated_group(std::size_t group_size) const;

  friend AxisProfile concat(const AxisProfile& a, const AxisProfile& b);
  friend bool operator==(const AxisProfile&, const AxisProfile&) = default;

private:
  std::vector<Axis> axes_;
};

/// Upper bound on stored entries for any single generator tensor.
inline constexpr std::size_t kMaxGeneratorEntries = 10'000'000;

/// Exact sparse tensor; indices are 1-based and packed row-major (axis 1 most significant).
class SparseTensor {
public:
  using Key = std::uint64_t;

  SparseTensor() = default;
  explicit SparseTensor(AxisProfile profile);

  const AxisProfile& profile() const { return profile_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Rational coefficient(std::span<const int> index) const;
  /// Accumulates c at index; an entry that cancels to zero is erased.
  void add(std::span<const int> index, const Rational& c);
  void add_packed(Key key, const Rational& c);

  Key pack(std::span<const int> index) const;
  std::vector<int> unpack(Key key) const;
  void unpack_into(Key key, std::span<int> out) const;

  const std::map<Key, Rational>& entries() const { return entries_; }
  const std::vector<Key>& strides() const { return strides_; }

  /// Visits entries in lexicographic index order.
  void for_each(const std::function<void(std::span<const int>, const Rational&)>& f) const;

  SparseTensor& operator+=(const SparseTensor& other);
  SparseTensor& operator-=(const SparseTensor& other);
  SparseTensor& operator*=(const Rational& c);

  friend bool operator==(const SparseTensor& a, const SparseTensor& b)
  {
    return a.profile_ == b.profile_ && a.entries_ == b.entries_;
  }

private:
  void check_compatible(const SparseTensor& other) const;

  AxisProfile profile_;
  std::vector<Key> strides_;
  std::map<Key, Rational> entries_;
};

SparseTensor operator+(SparseTensor a, const SparseTensor& b);
SparseTensor operator-(SparseTensor a, const SparseTensor& b);
SparseTensor operator*(const Rational& c, SparseTensor t);

/// Product of `total/m` epsilon symbols of size m over `total` axes of the given kind.
SparseTensor build_epsilon_tensor(AxisKind kind, int m, int total, const Permutation& sigma);

/// v_sigma in V^{2r}. Throws DivisibilityError unless n | 2r.
SparseTensor build_v(int n, int r, const Permutation& sigma);
/// w^eta in (W*)^{r}. Throws DivisibilityError unless k | r.
SparseTensor build_w(int k, int r, const Permutation& eta);

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);

/// Moves axis i of t to position perm(i).
SparseTensor permute_factors(const SparseTensor& t, const Permutation& perm);

/// Re-lays V^{2r} (x) W*^{r} as (V V W*)^r: new axes 3t-2, 3t-1, 3t are old 2t-1, 2t, 2r+t.
SparseTensor interleave_triples(const SparseTensor& t);
/// Inverse of interleave_triples.
SparseTensor deinterleave_triples(const SparseTensor& t);

/// Moves triple i of a (V V W*)^r tensor to triple position tau(i).
SparseTensor permute_triples(const SparseTensor& t, const Permutation& tau);

/// (1/r!) sum over tau in S_r of tau.t, where tau permutes consecutive groups of
/// `group_size` axes. Requires the profile to be r copies of one group.
SparseTensor symmetrize_groups(const SparseTensor& t, std::size_t group_size);

/// Symmetrizer on (V V W*)^r. Throws ShapeError for any other layout.
SparseTensor symmetrize(const SparseTensor& t);

namespace reference {

/// Single-threaded symmetrizer kept as the baseline for the OpenMP kernel.
SparseTensor symmetrize_groups(const SparseTensor& t, std::size_t group_size);

} // namespace reference

} // namespace bilinv
