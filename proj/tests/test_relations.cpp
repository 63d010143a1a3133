#include <doctest.h>

#include "bilinv/errors.hpp"
#include "bilinv/relations.hpp"
#include "bilinv/sampling.hpp"
#include "test_util.hpp"

using namespace bilinv;
using testutil::cyc;

namespace {

std::vector<std::pair<std::string, Rational>> labelled(const RelationCertificate& c)
{
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& t : c.terms) {
    std::string label;
    if (t.sigma)
      label += "v" + t.sigma->to_cycle_string();
    if (t.eta)
      label += "w" + t.eta->to_cycle_string();
    out.emplace_back(label, t.coef);
  }
  return out;
}

} // namespace

TEST_SUITE("relations") {

TEST_CASE("sigma relation on W*")
{
  const auto c = typeB_relation(2, 4, ShuffleSpec(Permutation::identity(4), {1, 2, 3}));
  CHECK(c.verified);
  CHECK(c.construction == Construction::Literal);
  CHECK(labelled(c) == std::vector<std::pair<std::string, Rational>>{{"w(1)", 1}, {"w(23)", -1}, {"w(132)", 1}});
  CHECK(expand(c).is_zero());
  CHECK(expand(c).profile() == AxisProfile::repeated(AxisKind::WDual, 2, 4));

  // Each term of the relation against its golden group of four entries.
  auto lines = testutil::read_lines(testutil::golden_path("sigma_groups.txt"));
  REQUIRE(lines.size() == 12);
  for (std::size_t g = 0; g < 3; ++g) {
    std::vector<std::string> group(lines.begin() + static_cast<long>(4 * g), lines.begin() + static_cast<long>(4 * g + 4));
    const auto& term = c.terms[g];
    CHECK(testutil::entries(term.coef * build_w(2, 4, *term.eta)) == testutil::parse_tensor_lines(group));
  }
}

TEST_CASE("v_(23)(67) tensored with the sigma relation vanishes")
{
  const auto sigma_rel = typeB_relation(2, 4, ShuffleSpec(Permutation::identity(4), {1, 2, 3}));
  const auto c = combined_relation(2, 2, cyc("(23)(67)", 8), sigma_rel);
  CHECK(c.verified);
  CHECK(c.terms.size() == 3);
  const auto t = expand(c);
  CHECK(t.is_zero());
  CHECK(t.profile().order() == 12);
  CHECK(expand_polynomial(c).is_zero());

  const auto s = symmetrized_relation(c);
  CHECK(s.verified);
  CHECK(s.kind == RelationKind::Symmetrized);
  REQUIRE(s.dropped.size() == 1);
  CHECK(s.dropped[0].eta->is_identity());
  CHECK(s.terms.size() == 2);
}

TEST_CASE("fallback construction when the literal formula does not vanish")
{
  const auto c = typeA_relation(2, 4, ShuffleSpec(cyc("(23)(67)", 8), {1, 2, 3}));
  CHECK(c.verified);
  CHECK(c.construction == Construction::Shuffle);
  CHECK(c.terms.size() == 3);
  CHECK(expand(c).is_zero());
  CHECK(c.terms[0].sigma == cyc("(23)(67)", 8));
  CHECK(c.terms[0].coef == 1);
}

TEST_CASE("V-side analogue of sigma")
{
  const auto c = typeA_relation(2, 2, ShuffleSpec(Permutation::identity(4), {1, 2, 3}));
  CHECK(c.construction == Construction::Literal);
  CHECK(labelled(c) == std::vector<std::pair<std::string, Rational>>{{"v(1)", 1}, {"v(23)", -1}, {"v(132)", 1}});
}

TEST_CASE("random shuffle specs always verify")
{
  Rng rng(81);
  std::vector<RelationCertificate> certs;
  for (int trial = 0; trial < 60; ++trial) {
    certs.push_back(typeA_relation(2, 4, random_shuffle_spec(8, 2, rng)));
    certs.push_back(typeB_relation(2, 4, random_shuffle_spec(4, 2, rng)));
    certs.push_back(typeA_relation(3, 3, random_shuffle_spec(6, 3, rng)));
  }
  const auto ok = verify_all(certs);
  CHECK(ok == reference::verify_all(certs));
  for (std::size_t i = 0; i < certs.size(); ++i) {
    CHECK(ok[i]);
    CHECK(certs[i].verified);
  }
}

TEST_CASE("trivial relations")
{
  const auto c = trivial_relation(RelationSide::W, 2, cyc("(123)", 4), cyc("(23)", 4));
  CHECK(labelled(c) == std::vector<std::pair<std::string, Rational>>{{"w(123)", 1}, {"w(23)", 1}});
  CHECK(c.verified);
  CHECK_THROWS_AS(trivial_relation(RelationSide::W, 2, Permutation::identity(4), cyc("(23)", 4)), UsageError);

  const auto all = trivial_relations(2, 2, 2);
  // 4! - 3 non-canonical on V, 2! - 1 on W
  CHECK(all.size() == 21 + 1);
  for (const auto& t : all)
    CHECK(t.verified);
  CHECK_THROWS_AS(trivial_relations(2, 2, 4, 100), SizeError);
}

TEST_CASE("shuffle spec validation")
{
  CHECK_THROWS_AS(ShuffleSpec(Permutation::identity(4), {1, 1, 2}), DomainError);
  CHECK_THROWS_AS(ShuffleSpec(Permutation::identity(4), {1, 2, 5}), DomainError);
  CHECK_THROWS(typeB_relation(2, 4, ShuffleSpec(Permutation::identity(4), {1, 2})));
  CHECK_THROWS_AS(typeB_relation(2, 3, ShuffleSpec(Permutation::identity(3), {1, 2, 3})), DivisibilityError);
  CHECK(ShuffleSpec(Permutation::identity(4), {3, 1, 2}).slots == std::vector<int>{1, 2, 3});
}

TEST_CASE("combining needs exactly one relation of the right side")
{
  const auto w_rel = typeB_relation(2, 4, ShuffleSpec(Permutation::identity(4), {1, 2, 3}));
  CHECK_THROWS_AS(combined_relation(2, 2, w_rel, Permutation::identity(4)), UsageError);
  CHECK_THROWS_AS(combined_relation(2, 2, Permutation::identity(8), Permutation::identity(4)), UsageError);
  CHECK_THROWS_AS(combined_relation(2, 2, Permutation::identity(6), w_rel), DimensionError);
  RelationCertificate unverified = w_rel;
  unverified.verified = false;
  CHECK_THROWS_AS(symmetrized_relation(unverified), UsageError);
}

TEST_CASE("corrupted certificates fail verification")
{
  auto c = typeB_relation(2, 4, ShuffleSpec(Permutation::identity(4), {1, 2, 3}));
  c.terms[1].coef = 1;
  CHECK_FALSE(verify(c));
}

TEST_CASE("slot subsets")
{
  const auto s = slot_subsets(3, 4);
  CHECK(s == std::vector<std::vector<int>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  CHECK(slot_subsets(5, 4).empty());
}

TEST_CASE("kernel of generators is spanned by the relations")
{
  struct Case {
    int n, k, r;
    std::size_t class_kernel, raw_kernel;
  };
  for (const Case c : {Case{2, 1, 1, 0, 1}, Case{2, 1, 2, 1, 46}, Case{2, 2, 2, 1, 46}}) {
    const auto report = kernel_span_check(c.n, c.k, c.r);
    CHECK(report.gate);
    CHECK_FALSE(report.truncated);
    REQUIRE(report.classes);
    REQUIRE(report.raw);
    CHECK(report.classes->kernel_dim == c.class_kernel);
    CHECK(report.raw->kernel_dim == c.raw_kernel);
    CHECK(report.classes->deficit.empty());
    CHECK(report.raw->deficit.empty());
    CHECK(report.classes->relation_span_dim == report.classes->kernel_dim);
    CHECK(report.raw->relation_span_dim == report.raw->kernel_dim);
    CHECK(report.spanned());
  }
}

TEST_CASE("kernel ranks agree with the dense oracle")
{
  const auto report = kernel_span_check(2, 2, 2);
  REQUIRE(report.raw);
  // rank of the raw generator matrix, computed densely
  oracle::Matrix columns;
  for_each_permutation(4, [&](const Permutation& sigma) {
    for_each_permutation(2, [&](const Permutation& eta) {
      std::vector<Rational> col;
      const auto v = oracle::epsilon_tensor(2, 4, sigma);
      const auto w = oracle::epsilon_tensor(2, 2, eta);
      oracle::for_each_index(2, 4, [&](const oracle::Index& i) {
        oracle::for_each_index(2, 2, [&](const oracle::Index& j) {
          const auto vi = v.find(i), wj = w.find(j);
          col.push_back(vi != v.end() && wj != w.end() ? Rational(vi->second * wj->second) : Rational(0));
        });
      });
      columns.push_back(col);
    });
  });
  CHECK(report.raw->rank == oracle::rank(columns));
  CHECK(report.raw->columns == 48);
}

TEST_CASE("span check truncates on budget and respects the gate")
{
  const auto big = kernel_span_check(2, 2, 4, 100);
  CHECK(big.truncated);
  CHECK_FALSE(big.spanned());
  CHECK_FALSE(big.truncation_reason.empty());
  const auto none = kernel_span_check(3, 2, 2);
  CHECK_FALSE(none.gate);
}

}
