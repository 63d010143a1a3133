#include "bilinv/tensor.hpp"

#include <omp.h>

#include <limits>
#include <string>

#include "bilinv/errors.hpp"

namespace bilinv {

AxisProfile::AxisProfile(std::vector<Axis> axes)
  : axes_(std::move(axes))
{
  long double size = 1;
  for (const auto& a : axes_) {
    if (a.dim < 1)
      throw ShapeError("axis dimension must be positive");
    size *= a.dim;
  }
  if (size > static_cast<long double>(std::numeric_limits<std::int64_t>::max()))
    throw SizeError("tensor index space does not fit a packed 63-bit key");
}

AxisProfile AxisProfile::repeated(AxisKind kind, int dim, int count)
{
  return AxisProfile(std::vector<Axis>(static_cast<std::size_t>(count), Axis{kind, dim}));
}

AxisProfile AxisProfile::triples(int n, int k, int r)
{
  std::vector<Axis> axes;
  for (int t = 0; t < r; ++t) {
    axes.push_back({AxisKind::V, n});
    axes.push_back({AxisKind::V, n});
    axes.push_back({AxisKind::WDual, k});
  }
  return AxisProfile(std::move(axes));
}

bool AxisProfile::is_repeated_group(std::size_t group_size) const
{
  if (group_size == 0 || axes_.empty() || axes_.size() % group_size != 0)
    return false;
  for (std::size_t i = group_size; i < axes_.size(); ++i)
    if (!(axes_[i] == axes_[i % group_size]))
      return false;
  return true;
}

AxisProfile concat(const AxisProfile& a, const AxisProfile& b)
{
  std::vector<Axis> axes = a.axes_;
  axes.insert(axes.end(), b.axes_.begin(), b.axes_.end());
  return AxisProfile(std::move(axes));
}

SparseTensor::SparseTensor(AxisProfile profile)
  : profile_(std::move(profile)), strides_(profile_.order())
{
  Key stride = 1;
  for (std::size_t i = profile_.order(); i-- > 0;) {
    strides_[i] = stride;
    stride *= static_cast<Key>(profile_[i].dim);
  }
}

SparseTensor::Key SparseTensor::pack(std::span<const int> index) const
{
  if (index.size() != profile_.order())
    throw ShapeError("multi-index length does not match tensor order");
  Key key = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] < 1 || index[i] > profile_[i].dim)
      throw DomainError("multi-index entry " + std::to_string(index[i]) + " outside axis range");
    key += static_cast<Key>(index[i] - 1) * strides_[i];
  }
  return key;
}

void SparseTensor::unpack_into(Key key, std::span<int> out) const
{
  for (std::size_t i = 0; i < strides_.size(); ++i) {
    out[i] = static_cast<int>(key / strides_[i]) + 1;
    key %= strides_[i];
  }
}

std::vector<int> SparseTensor::unpack(Key key) const
{
  std::vector<int> out(profile_.order());
  unpack_into(key, out);
  return out;
}

Rational SparseTensor::coefficient(std::span<const int> index) const
{
  auto it = entries_.find(pack(index));
  return it == entries_.end() ? Rational(0) : it->second;
}

void SparseTensor::add(std::span<const int> index, const Rational& c)
{
  add_packed(pack(index), c);
}

void SparseTensor::add_packed(Key key, const Rational& c)
{
  if (bilinv::is_zero(c))
    return;
  auto [it, inserted] = entries_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (bilinv::is_zero(it->second))
      entries_.erase(it);
  }
}

void SparseTensor::for_each(const std::function<void(std::span<const int>, const Rational&)>& f) const
{
  std::vector<int> index(profile_.order());
  for (const auto& [key, c] : entries_) {
    unpack_into(key, index);
    f(index, c);
  }
}

void SparseTensor::check_compatible(const SparseTensor& other) const
{
  if (!(profile_ == other.profile_))
    throw ShapeError("tensor profiles differ");
}

SparseTensor& SparseTensor::operator+=(const SparseTensor& other)
{
  check_compatible(other);
  for (const auto& [key, c] : other.entries_)
    add_packed(key, c);
  return *this;
}

SparseTensor& SparseTensor::operator-=(const SparseTensor& other)
{
  check_compatible(other);
  for (const auto& [key, c] : other.entries_)
    add_packed(key, -c);
  return *this;
}

SparseTensor& SparseTensor::operator*=(const Rational& c)
{
  if (bilinv::is_zero(c)) {
    entries_.clear();
    return *this;
  }
  for (auto& [key, value] : entries_)
    value *= c;
  return *this;
}

SparseTensor operator+(SparseTensor a, const SparseTensor& b) { return a += b; }
SparseTensor operator-(SparseTensor a, const SparseTensor& b) { return a -= b; }
SparseTensor operator*(const Rational& c, SparseTensor t) { return t *= c; }

namespace {

struct SignedPermutation {
  std::vector<int> values;
  int sign;
};

std::vector<SignedPermutation> all_signed_permutations(int m)
{
  std::vector<SignedPermutation> out;
  for_each_permutation(m, [&](const Permutation& p) { out.push_back({p.images(), parity(p)}); });
  return out;
}

} // namespace

SparseTensor build_epsilon_tensor(AxisKind kind, int m, int total, const Permutation& sigma)
{
  if (m < 1 || total < 1 || total % m != 0)
    throw DivisibilityError("block size " + std::to_string(m) + " does not divide " + std::to_string(total));
  if (sigma.degree() != total)
    throw DomainError("permutation degree must equal the number of tensor factors");
  const int blocks = total / m;
  const auto perms = all_signed_permutations(m);
  long double entries = 1;
  for (int b = 0; b < blocks; ++b)
    entries *= static_cast<long double>(perms.size());
  if (entries > static_cast<long double>(kMaxGeneratorEntries))
    throw SizeError("generator tensor would exceed the entry limit");

  SparseTensor t(AxisProfile::repeated(kind, m, total));
  const auto slots = block_slots(m, sigma);
  std::vector<std::size_t> choice(static_cast<std::size_t>(blocks), 0);
  std::vector<int> index(static_cast<std::size_t>(total));
  while (true) {
    int sign = 1;
    for (std::size_t b = 0; b < choice.size(); ++b) {
      const auto& p = perms[choice[b]];
      sign *= p.sign;
      for (std::size_t u = 0; u < slots[b].size(); ++u)
        index[static_cast<std::size_t>(slots[b][u] - 1)] = p.values[u];
    }
    t.add(index, Rational(sign));
    std::size_t b = 0;
    while (b < choice.size() && ++choice[b] == perms.size())
      choice[b++] = 0;
    if (b == choice.size())
      break;
  }
  return t;
}

SparseTensor build_v(int n, int r, const Permutation& sigma)
{
  if (n < 1 || r < 1 || (2 * r) % n != 0)
    throw DivisibilityError("no invariants: n does not divide 2r");
  return build_epsilon_tensor(AxisKind::V, n, 2 * r, sigma);
}

SparseTensor build_w(int k, int r, const Permutation& eta)
{
  if (k < 1 || r < 1 || r % k != 0)
    throw DivisibilityError("no invariants: k does not divide r");
  return build_epsilon_tensor(AxisKind::WDual, k, r, eta);
}

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b)
{
  SparseTensor out(concat(a.profile(), b.profile()));
  SparseTensor::Key scale = 1;
  for (const auto& axis : b.profile().axes())
    scale *= static_cast<SparseTensor::Key>(axis.dim);
  for (const auto& [ka, ca] : a.entries())
    for (const auto& [kb, cb] : b.entries())
      out.add_packed(ka * scale + kb, ca * cb);
  return out;
}

SparseTensor permute_factors(const SparseTensor& t, const Permutation& perm)
{
  const std::size_t order = t.profile().order();
  if (static_cast<std::size_t>(perm.degree()) != order)
    throw ShapeError("factor permutation degree must equal tensor order");
  std::vector<Axis> axes(order);
  for (std::size_t i = 0; i < order; ++i)
    axes[static_cast<std::size_t>(perm(static_cast<int>(i) + 1) - 1)] = t.profile()[i];
  SparseTensor out{AxisProfile(std::move(axes))};
  std::vector<int> from(order), to(order);
  for (const auto& [key, c] : t.entries()) {
    t.unpack_into(key, from);
    for (std::size_t i = 0; i < order; ++i)
      to[static_cast<std::size_t>(perm(static_cast<int>(i) + 1) - 1)] = from[i];
    out.add(to, c);
  }
  return out;
}

namespace {

int count_leading_v_then_w(const AxisProfile& p, int& r, int& n, int& k)
{
  const auto order = static_cast<int>(p.order());
  if (order % 3 != 0 || order == 0)
    return 0;
  r = order / 3;
  n = p[0].dim;
  k = p[static_cast<std::size_t>(2 * r)].dim;
  for (int i = 0; i < 2 * r; ++i)
    if (!(p[static_cast<std::size_t>(i)] == Axis{AxisKind::V, n}))
      return 0;
  for (int i = 2 * r; i < order; ++i)
    if (!(p[static_cast<std::size_t>(i)] == Axis{AxisKind::WDual, k}))
      return 0;
  return 1;
}

Permutation interleave_map(int r)
{
  std::vector<int> images(static_cast<std::size_t>(3 * r));
  for (int t = 1; t <= r; ++t) {
    images[static_cast<std::size_t>(2 * t - 2)] = 3 * t - 2;
    images[static_cast<std::size_t>(2 * t - 1)] = 3 * t - 1;
    images[static_cast<std::size_t>(2 * r + t - 1)] = 3 * t;
  }
  return Permutation(std::move(images));
}

void require_triples(const AxisProfile& p)
{
  if (!p.is_repeated_group(3) || p[0].kind != AxisKind::V || p[1].kind != AxisKind::V ||
      p[2].kind != AxisKind::WDual || p[0].dim != p[1].dim)
    throw ShapeError("expected a (V, V, W*) repeated-triple profile");
}

std::vector<std::vector<std::size_t>> group_actions(std::size_t groups, std::size_t group_size)
{
  // target[a] = position receiving axis a under each tau in S_groups.
  std::vector<std::vector<std::size_t>> actions;
  for_each_permutation(static_cast<int>(groups), [&](const Permutation& tau) {
    std::vector<std::size_t> target(groups * group_size);
    for (std::size_t g = 0; g < groups; ++g)
      for (std::size_t u = 0; u < group_size; ++u)
        target[g * group_size + u] = static_cast<std::size_t>(tau(static_cast<int>(g) + 1) - 1) * group_size + u;
    actions.push_back(std::move(target));
  });
  return actions;
}

void check_groups(const SparseTensor& t, std::size_t group_size)
{
  if (!t.profile().is_repeated_group(group_size))
    throw ShapeError("profile is not a repetition of one axis group");
  if (t.profile().order() / group_size > 10)
    throw SizeError("symmetrizer over more than 10 groups is not supported");
}

} // namespace

SparseTensor interleave_triples(const SparseTensor& t)
{
  int r = 0, n = 0, k = 0;
  if (!count_leading_v_then_w(t.profile(), r, n, k))
    throw ShapeError("expected V^{2r} (x) W*^{r} block layout");
  return permute_factors(t, interleave_map(r));
}

SparseTensor deinterleave_triples(const SparseTensor& t)
{
  require_triples(t.profile());
  return permute_factors(t, interleave_map(static_cast<int>(t.profile().order() / 3)).inverse());
}

SparseTensor permute_triples(const SparseTensor& t, const Permutation& tau)
{
  require_triples(t.profile());
  const int r = tau.degree();
  if (static_cast<std::size_t>(3 * r) != t.profile().order())
    throw ShapeError("triple permutation degree must equal the number of triples");
  std::vector<int> images(static_cast<std::size_t>(3 * r));
  for (int i = 1; i <= r; ++i)
    for (int u = 0; u < 3; ++u)
      images[static_cast<std::size_t>(3 * (i - 1) + u)] = 3 * (tau(i) - 1) + u + 1;
  return permute_factors(t, Permutation(std::move(images)));
}

SparseTensor symmetrize_groups(const SparseTensor& t, std::size_t group_size)
{
  check_groups(t, group_size);
  const std::size_t order = t.profile().order();
  const std::size_t groups = order / group_size;
  const auto actions = group_actions(groups, group_size);
  const Rational weight(1, static_cast<unsigned long>(factorial(static_cast<int>(groups))));

  // Source and target share strides since all groups are identical.
  const auto& strides = t.strides();
  const std::vector<std::pair<SparseTensor::Key, Rational>> source(t.entries().begin(), t.entries().end());

  const int threads = omp_get_max_threads();
  std::vector<std::map<SparseTensor::Key, Rational>> partial(static_cast<std::size_t>(threads));
#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
    std::vector<int> index(order);
#pragma omp for schedule(dynamic, 16)
    for (std::size_t e = 0; e < source.size(); ++e) {
      t.unpack_into(source[e].first, index);
      for (const auto& target : actions) {
        SparseTensor::Key key = 0;
        for (std::size_t a = 0; a < order; ++a)
          key += static_cast<SparseTensor::Key>(index[a] - 1) * strides[target[a]];
        auto [it, inserted] = local.try_emplace(key, source[e].second);
        if (!inserted)
          it->second += source[e].second;
      }
    }
  }

  SparseTensor out(t.profile());
  for (const auto& local : partial)
    for (const auto& [key, c] : local)
      out.add_packed(key, c);
  out *= weight;
  return out;
}

SparseTensor symmetrize(const SparseTensor& t)
{
  require_triples(t.profile());
  return symmetrize_groups(t, 3);
}

namespace reference {

SparseTensor symmetrize_groups(const SparseTensor& t, std::size_t group_size)
{
  check_groups(t, group_size);
  const std::size_t groups = t.profile().order() / group_size;
  SparseTensor out(t.profile());
  for_each_permutation(static_cast<int>(groups), [&](const Permutation& tau) {
    std::vector<int> images(t.profile().order());
    for (std::size_t g = 0; g < groups; ++g)
      for (std::size_t u = 0; u < group_size; ++u)
        images[g * group_size + u] =
          static_cast<int>(static_cast<std::size_t>(tau(static_cast<int>(g) + 1) - 1) * group_size + u + 1);
    out += permute_factors(t, Permutation(std::move(images)));
  });
  out *= Rational(1, static_cast<unsigned long>(factorial(static_cast<int>(groups))));
  return out;
}

} // namespace reference

} // namespace bilinv
