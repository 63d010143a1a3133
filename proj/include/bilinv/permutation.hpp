#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bilinv/errors.hpp"

namespace bilinv {

/// Bijection of {1..m}, stored in one-line notation: images()[i-1] == p(i).
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int degree);
  /// Cycle notation such as "(23)(67)" or "(1 10 2)"; "(1)" and "" mean identity.
  static Permutation from_cycles(std::string_view text, int degree);
  static Permutation from_cycles(const std::vector<std::vector<int>>& cycles, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  /// Cycle notation with fixed points omitted; identity prints as "(1)".
  /// Labels above 9 are space-separated inside a cycle.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

/// (p * q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// Sign of a sequence of distinct integers, by merge-sort inversion count.
int sequence_parity(std::span<const int> values);
int parity(const Permutation& p);

/// Levi-Civita symbol on m letters; 0 on repeated indices.
int epsilon(std::span<const int> indices, int m);

/// A product of `blocks` epsilon symbols of size `block_size` selected by `sigma`.
struct EpsilonProductSpec {
  int block_size = 1;
  int blocks = 1;
  Permutation sigma;

  EpsilonProductSpec(int block_size, int blocks, Permutation sigma);
  int total() const { return block_size * blocks; }
};

/// Block t reads the assignment at slots sigma^{-1}((t-1)m+1) .. sigma^{-1}(tm).
int epsilon_product(const EpsilonProductSpec& spec, std::span<const int> assignment);

/// Slots feeding each epsilon factor: result[t] = (sigma^{-1}(tm+1), ..., sigma^{-1}(tm+m)).
std::vector<std::vector<int>> block_slots(int block_size, const Permutation& sigma);

/// Induced action on pairs: tau(i) = j gives hat(2i-1) = 2j-1, hat(2i) = 2j.
Permutation lift_to_double(const Permutation& tau);

/// Calls f for every permutation of {1..m} in lexicographic order.
void for_each_permutation(int m, const std::function<void(const Permutation&)>& f);

long long factorial(int m);

} // namespace bilinv

template <>
struct std::hash<bilinv::Permutation> {
  std::size_t operator()(const bilinv::Permutation& p) const noexcept
  {
    std::size_t h = 1469598103934665603ULL;
    for (int v : p.images())
      h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};
