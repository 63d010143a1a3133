#include "bilinv/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace bilinv {

namespace {

void check_bijection(const std::vector<int>& images)
{
  std::vector<bool> seen(images.size() + 1, false);
  for (int v : images) {
    if (v < 1 || v > static_cast<int>(images.size()))
      throw DomainError("permutation image out of range: " + std::to_string(v));
    if (seen[static_cast<std::size_t>(v)])
      throw DomainError("permutation image repeated: " + std::to_string(v));
    seen[static_cast<std::size_t>(v)] = true;
  }
}

long long count_inversions(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo, std::size_t hi)
{
  if (hi - lo < 2)
    return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  long long count = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, out = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += static_cast<long long>(mid - i);
      scratch[out++] = v[j++];
    } else {
      scratch[out++] = v[i++];
    }
  }
  while (i < mid)
    scratch[out++] = v[i++];
  while (j < hi)
    scratch[out++] = v[j++];
  std::copy(scratch.begin() + static_cast<long>(lo), scratch.begin() + static_cast<long>(hi),
            v.begin() + static_cast<long>(lo));
  return count;
}

} // namespace

Permutation::Permutation(std::vector<int> images)
  : images_(std::move(images))
{
  check_bijection(images_);
}

Permutation Permutation::identity(int degree)
{
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(const std::vector<std::vector<int>>& cycles, int degree)
{
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(degree) + 1, false);
  for (const auto& cycle : cycles) {
    for (int label : cycle) {
      if (label < 1 || label > degree)
        throw DomainError("cycle label " + std::to_string(label) + " outside 1.." + std::to_string(degree));
      if (used[static_cast<std::size_t>(label)] && cycle.size() > 1)
        throw DomainError("cycle label repeated: " + std::to_string(label));
      if (cycle.size() > 1)
        used[static_cast<std::size_t>(label)] = true;
    }
    if (cycle.size() < 2)
      continue;
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::string_view text, int degree)
{
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw std::invalid_argument("cycle notation must start with '(': " + std::string(text));
    auto close = text.find(')', pos);
    if (close == std::string_view::npos)
      throw std::invalid_argument("unterminated cycle: " + std::string(text));
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::vector<int> cycle;
    bool separated = body.find_first_of(" ,") != std::string_view::npos;
    if (separated) {
      std::string token;
      for (char c : std::string(body) + " ") {
        if (std::isdigit(static_cast<unsigned char>(c))) {
          token.push_back(c);
        } else if (c == ' ' || c == ',') {
          if (!token.empty())
            cycle.push_back(std::stoi(token));
          token.clear();
        } else {
          throw std::invalid_argument("bad character in cycle: " + std::string(text));
        }
      }
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw std::invalid_argument("bad character in cycle: " + std::string(text));
        cycle.push_back(c - '0');
      }
    }
    if (cycle.empty())
      throw std::invalid_argument("empty cycle: " + std::string(text));
    cycles.push_back(std::move(cycle));
    pos = close + 1;
    skip_space();
  }
  return from_cycles(cycles, degree);
}

Permutation Permutation::inverse() const
{
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

bool Permutation::is_identity() const
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1)
      return false;
  return true;
}

std::string Permutation::to_cycle_string() const
{
  std::string out;
  std::vector<bool> seen(images_.size() + 1, false);
  for (int start = 1; start <= degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || (*this)(start) == start)
      continue;
    std::vector<int> cycle;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
    }
    bool wide = std::any_of(cycle.begin(), cycle.end(), [](int x) { return x > 9; });
    out.push_back('(');
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (wide && i > 0)
        out.push_back(' ');
      out += std::to_string(cycle[i]);
    }
    out.push_back(')');
  }
  return out.empty() ? "(1)" : out;
}

Permutation compose(const Permutation& p, const Permutation& q)
{
  if (p.degree() != q.degree())
    throw DomainError("composing permutations of different degree");
  std::vector<int> images(static_cast<std::size_t>(p.degree()));
  for (int i = 1; i <= p.degree(); ++i)
    images[static_cast<std::size_t>(i - 1)] = p(q(i));
  return Permutation(std::move(images));
}

int sequence_parity(std::span<const int> values)
{
  std::vector<int> v(values.begin(), values.end());
  std::vector<int> scratch(v.size());
  return count_inversions(v, scratch, 0, v.size()) % 2 == 0 ? 1 : -1;
}

int parity(const Permutation& p)
{
  return sequence_parity(p.images());
}

int epsilon(std::span<const int> indices, int m)
{
  if (static_cast<int>(indices.size()) != m)
    throw DomainError("epsilon expects exactly m indices");
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  bool repeated = false;
  for (int i : indices) {
    if (i < 1 || i > m)
      throw DomainError("epsilon index " + std::to_string(i) + " outside 1.." + std::to_string(m));
    if (seen[static_cast<std::size_t>(i)])
      repeated = true;
    seen[static_cast<std::size_t>(i)] = true;
  }
  return repeated ? 0 : sequence_parity(indices);
}

EpsilonProductSpec::EpsilonProductSpec(int block_size_, int blocks_, Permutation sigma_)
  : block_size(block_size_), blocks(blocks_), sigma(std::move(sigma_))
{
  if (block_size < 1 || blocks < 1)
    throw DomainError("epsilon product needs positive block size and count");
  if (sigma.degree() != total())
    throw DomainError("sigma degree must equal block_size * blocks");
}

std::vector<std::vector<int>> block_slots(int block_size, const Permutation& sigma)
{
  if (block_size < 1 || sigma.degree() % block_size != 0)
    throw DomainError("block size must divide the permutation degree");
  Permutation inv = sigma.inverse();
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(sigma.degree() / block_size));
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    blocks[t].reserve(static_cast<std::size_t>(block_size));
    for (int u = 1; u <= block_size; ++u)
      blocks[t].push_back(inv(static_cast<int>(t) * block_size + u));
  }
  return blocks;
}

int epsilon_product(const EpsilonProductSpec& spec, std::span<const int> assignment)
{
  if (static_cast<int>(assignment.size()) != spec.total())
    throw DomainError("assignment length must equal block_size * blocks");
  int value = 1;
  std::vector<int> picked(static_cast<std::size_t>(spec.block_size));
  for (const auto& slots : block_slots(spec.block_size, spec.sigma)) {
    for (std::size_t u = 0; u < slots.size(); ++u)
      picked[u] = assignment[static_cast<std::size_t>(slots[u] - 1)];
    value *= epsilon(picked, spec.block_size);
    if (value == 0)
      return 0;
  }
  return value;
}

Permutation lift_to_double(const Permutation& tau)
{
  std::vector<int> images(static_cast<std::size_t>(2 * tau.degree()));
  for (int i = 1; i <= tau.degree(); ++i) {
    int j = tau(i);
    images[static_cast<std::size_t>(2 * i - 2)] = 2 * j - 1;
    images[static_cast<std::size_t>(2 * i - 1)] = 2 * j;
  }
  return Permutation(std::move(images));
}

void for_each_permutation(int m, const std::function<void(const Permutation&)>& f)
{
  std::vector<int> images(static_cast<std::size_t>(m));
  std::iota(images.begin(), images.end(), 1);
  do {
    f(Permutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

long long factorial(int m)
{
  long long f = 1;
  for (int i = 2; i <= m; ++i)
    f *= i;
  return f;
}

} // namespace bilinv
