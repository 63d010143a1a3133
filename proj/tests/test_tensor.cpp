#include <doctest.h>

#include <random>

#include "bilinv/errors.hpp"
#include "bilinv/sampling.hpp"
#include "bilinv/tensor.hpp"
#include "test_util.hpp"

using namespace bilinv;
using testutil::cyc;

TEST_SUITE("tensor_space") {

TEST_CASE("small epsilon expansions")
{
  using testutil::entries;
  using testutil::parse_tensor_lines;
  CHECK(entries(build_v(2, 1, Permutation::identity(2))) == parse_tensor_lines({"+1 1 2", "-1 2 1"}));
  CHECK(entries(build_v(2, 2, Permutation::identity(4))) ==
        parse_tensor_lines({"+1 1 2 1 2", "-1 1 2 2 1", "-1 2 1 1 2", "+1 2 1 2 1"}));
  CHECK(entries(build_v(2, 2, cyc("(23)", 4))) ==
        parse_tensor_lines({"+1 1 1 2 2", "-1 1 2 2 1", "-1 2 1 1 2", "+1 2 2 1 1"}));
}

TEST_CASE("v_(23)(67) has sixteen terms")
{
  const auto t = build_v(2, 4, cyc("(23)(67)", 8));
  CHECK(t.nnz() == 16);
  CHECK(testutil::entries(t) ==
        testutil::parse_tensor_lines(testutil::read_lines(testutil::golden_path("v_23_67.txt"))));
}

TEST_CASE("generator tensors match the dense oracle")
{
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2, r = 3;
    if ((2 * r) % n)
      continue;
    const auto sigma = random_permutation(2 * r, rng);
    CHECK(testutil::entries(build_v(n, r, sigma)) == testutil::as_rational(oracle::epsilon_tensor(n, 2 * r, sigma)));
    const auto eta = random_permutation(4, rng);
    CHECK(testutil::entries(build_w(2, 4, eta)) == testutil::as_rational(oracle::epsilon_tensor(2, 4, eta)));
  }
}

TEST_CASE("gate failures throw")
{
  CHECK_THROWS_AS(build_v(3, 2, Permutation::identity(4)), DivisibilityError);
  CHECK_THROWS_AS(build_w(2, 3, Permutation::identity(3)), DivisibilityError);
}

TEST_CASE("pack and unpack are inverse")
{
  SparseTensor t(AxisProfile({{AxisKind::V, 3}, {AxisKind::WDual, 2}, {AxisKind::V, 4}}));
  oracle::for_each_index(2, 3, [&](const oracle::Index& idx) {
    CHECK(t.unpack(t.pack(idx)) == idx);
  });
  std::vector<int> bad{4, 1, 1};
  CHECK_THROWS(t.pack(bad));
}

TEST_CASE("arithmetic cancels to zero")
{
  const auto v = build_v(2, 2, Permutation::identity(4));
  auto d = v - v;
  CHECK(d.is_zero());
  auto twice = v + v;
  CHECK(twice == Rational(2) * v);
  SparseTensor other(AxisProfile::repeated(AxisKind::V, 3, 4));
  CHECK_THROWS(other += v);
}

TEST_CASE("tensor product indexes factor-major")
{
  const auto a = build_v(2, 1, Permutation::identity(2));
  const auto b = build_w(2, 2, Permutation::identity(2));
  const auto p = tensor_product(a, b);
  CHECK(p.nnz() == 4);
  std::vector<int> idx{1, 2, 2, 1};
  CHECK(p.coefficient(idx) == -1);
}

TEST_CASE("permuting factors acts on generator labels")
{
  // tau(w^eta) = w^(eta tau^-1), tau(v_sigma) = v_(sigma hat(tau)^-1)
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto eta = random_permutation(4, rng);
    const auto tau = random_permutation(4, rng);
    CHECK(permute_factors(build_w(2, 4, eta), tau) == build_w(2, 4, eta * tau.inverse()));
    const auto sigma = random_permutation(8, rng);
    const auto hat = lift_to_double(tau);
    CHECK(permute_factors(build_v(2, 4, sigma), hat) == build_v(2, 4, sigma * hat.inverse()));
  }
}

TEST_CASE("interleaving round trips")
{
  const auto g = tensor_product(build_v(2, 2, cyc("(23)", 4)), build_w(2, 2, Permutation::identity(2)));
  const auto t = interleave_triples(g);
  CHECK(t.profile() == AxisProfile::triples(2, 2, 2));
  CHECK(deinterleave_triples(t) == g);
}

TEST_CASE("symmetrizer is idempotent and kills antisymmetric tensors")
{
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = interleave_triples(tensor_product(build_v(2, 2, random_permutation(4, rng)),
                                                     build_w(1, 2, random_permutation(2, rng))));
    const auto s = symmetrize(g);
    CHECK(symmetrize(s) == s);
    for_each_permutation(2, [&](const Permutation& tau) { CHECK(permute_triples(s, tau) == s); });
  }
  for_each_permutation(4, [&](const Permutation& eta) {
    CHECK(symmetrize_groups(build_w(2, 4, eta), 1).is_zero());
  });
  CHECK_THROWS_AS(symmetrize(build_w(2, 4, Permutation::identity(4))), ShapeError);
}

TEST_CASE("symmetrizer kills v_(23)(67) (x) w^(1)")
{
  const auto g = tensor_product(build_v(2, 4, cyc("(23)(67)", 8)), build_w(2, 4, Permutation::identity(4)));
  CHECK(symmetrize(interleave_triples(g)).is_zero());
  const auto h = tensor_product(build_v(2, 4, cyc("(23)(67)", 8)), build_w(2, 4, cyc("(23)", 4)));
  CHECK_FALSE(symmetrize(interleave_triples(h)).is_zero());
}

TEST_CASE("parallel symmetrizer matches the serial reference")
{
  Rng rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const auto g = interleave_triples(
      tensor_product(build_v(2, 4, random_permutation(8, rng)), build_w(2, 4, random_permutation(4, rng))));
    CHECK(symmetrize_groups(g, 3) == reference::symmetrize_groups(g, 3));
  }
}

}
