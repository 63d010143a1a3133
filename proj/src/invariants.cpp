#include "bilinv/invariants.hpp"

#include <omp.h>

#include <algorithm>
#include <string>

#include "bilinv/errors.hpp"

namespace bilinv {

bool existence_gate(int n, int k, int r)
{
  return n > 0 && k > 0 && r > 0 && (2 * r) % n == 0 && r % k == 0;
}

GeneratorId::GeneratorId(int n_, int k_, int r_, Permutation sigma_, Permutation eta_)
  : n(n_), k(k_), r(r_), sigma(std::move(sigma_)), eta(std::move(eta_))
{
  if (!existence_gate(n, k, r))
    throw DivisibilityError("no invariants: n does not divide 2r or k does not divide r");
  if (sigma.degree() != 2 * r)
    throw DomainError("sigma must have degree 2r");
  if (eta.degree() != r)
    throw DomainError("eta must have degree r");
}

SideBlocks canonical_blocks(int block_size, const Permutation& sigma)
{
  SideBlocks out;
  out.blocks = block_slots(block_size, sigma);
  for (auto& block : out.blocks) {
    out.sign *= sequence_parity(block);
    std::sort(block.begin(), block.end());
  }
  // Epsilon factors commute, so reordering whole blocks leaves the sign alone.
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

Permutation permutation_from_blocks(const std::vector<Block>& blocks)
{
  std::vector<int> inverse_images;
  for (const auto& block : blocks)
    inverse_images.insert(inverse_images.end(), block.begin(), block.end());
  return Permutation(std::move(inverse_images)).inverse();
}

std::optional<int> relative_sign(int block_size, const Permutation& p, const Permutation& q)
{
  auto a = canonical_blocks(block_size, p);
  auto b = canonical_blocks(block_size, q);
  if (a.blocks != b.blocks)
    return std::nullopt;
  return a.sign * b.sign;
}

int BlockForm::r() const
{
  int total = 0;
  for (const auto& b : w_blocks)
    total += static_cast<int>(b.size());
  return total;
}

BlockForm canonicalize(const GeneratorId& g)
{
  auto v = canonical_blocks(g.n, g.sigma);
  auto w = canonical_blocks(g.k, g.eta);
  return BlockForm{std::move(v.blocks), std::move(w.blocks), v.sign * w.sign};
}

GeneratorId representative(const BlockForm& form)
{
  return GeneratorId(form.n(), form.k(), form.r(), permutation_from_blocks(form.v_blocks),
                     permutation_from_blocks(form.w_blocks));
}

namespace {

void partitions_from(std::vector<int>& remaining, int block_size, std::vector<Block>& current,
                     std::vector<std::vector<Block>>& out)
{
  if (remaining.empty()) {
    out.push_back(current);
    return;
  }
  // The least remaining label always opens the next block.
  const int first = remaining.front();
  std::vector<int> rest(remaining.begin() + 1, remaining.end());
  std::vector<bool> pick(rest.size(), false);
  std::fill(pick.begin(), pick.begin() + (block_size - 1), true);
  do {
    Block block{first};
    std::vector<int> left;
    for (std::size_t i = 0; i < rest.size(); ++i)
      (pick[i] ? block : left).push_back(rest[i]);
    current.push_back(std::move(block));
    partitions_from(left, block_size, current, out);
    current.pop_back();
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

} // namespace

std::vector<std::vector<Block>> block_partitions(int block_size, int total)
{
  if (block_size < 1 || total < 1 || total % block_size != 0)
    throw DivisibilityError("block size must divide the number of slots");
  std::vector<int> labels(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i)
    labels[static_cast<std::size_t>(i)] = i + 1;
  std::vector<Block> current;
  std::vector<std::vector<Block>> out;
  partitions_from(labels, block_size, current, out);
  return out;
}

Integer partition_count(int block_size, int total)
{
  if (block_size < 1 || total % block_size != 0)
    return 0;
  Integer num, a_fact, b_fact;
  mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(total));
  mpz_fac_ui(a_fact.get_mpz_t(), static_cast<unsigned long>(block_size));
  mpz_fac_ui(b_fact.get_mpz_t(), static_cast<unsigned long>(total / block_size));
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), a_fact.get_mpz_t(), static_cast<unsigned long>(total / block_size));
  return num / (den * b_fact);
}

Integer count_distinct(int n, int k, int r)
{
  if (!existence_gate(n, k, r))
    return 0;
  return partition_count(n, 2 * r) * partition_count(k, r);
}

EnumerationResult enumerate_distinct(int n, int k, int r, std::size_t limit)
{
  EnumerationResult result;
  if (!existence_gate(n, k, r)) {
    result.status = EnumerationResult::Status::NoInvariants;
    return result;
  }
  const auto v_parts = block_partitions(n, 2 * r);
  const auto w_parts = block_partitions(k, r);
  for (const auto& v : v_parts)
    for (const auto& w : w_parts) {
      if (result.classes.size() == limit) {
        result.status = EnumerationResult::Status::Truncated;
        return result;
      }
      result.classes.push_back(BlockForm{v, w, 1});
    }
  return result;
}

SparseTensor generator_tensor(const GeneratorId& g)
{
  return tensor_product(build_v(g.n, g.r, g.sigma), build_w(g.k, g.r, g.eta));
}

SparseTensor generator_tensor(const BlockForm& form)
{
  return Rational(form.sign) * generator_tensor(representative(form));
}

namespace {

struct Assignment {
  std::vector<int> values;
  int sign;
};

// Nonzero epsilon-product assignments, enumerated block by block.
std::vector<Assignment> epsilon_assignments(int block_size, const Permutation& sigma)
{
  std::vector<Assignment> perms;
  for_each_permutation(block_size, [&](const Permutation& p) { perms.push_back({p.images(), parity(p)}); });
  const auto slots = block_slots(block_size, sigma);

  std::vector<Assignment> out{{std::vector<int>(static_cast<std::size_t>(sigma.degree()), 0), 1}};
  for (const auto& block : slots) {
    std::vector<Assignment> next;
    next.reserve(out.size() * perms.size());
    for (const auto& partial : out)
      for (const auto& p : perms) {
        Assignment a = partial;
        for (std::size_t u = 0; u < block.size(); ++u)
          a.values[static_cast<std::size_t>(block[u] - 1)] = p.values[u];
        a.sign *= p.sign;
        next.push_back(std::move(a));
      }
    out = std::move(next);
  }
  return out;
}

void check_assignment_budget(const GeneratorId& g)
{
  long double count = 1;
  for (int b = 0; b < 2 * g.r / g.n; ++b)
    count *= static_cast<long double>(factorial(g.n));
  for (int b = 0; b < g.r / g.k; ++b)
    count *= static_cast<long double>(factorial(g.k));
  if (count > static_cast<long double>(kMaxGeneratorEntries))
    throw SizeError("generator evaluation would exceed the term limit");
}

void accumulate(SparsePolynomial& poly, int n, int r, const Assignment& v, const Assignment& w, Monomial& m)
{
  std::fill(m.begin(), m.end(), 0u);
  for (int t = 0; t < r; ++t) {
    const auto alpha = w.values[static_cast<std::size_t>(t)];
    const auto i = v.values[static_cast<std::size_t>(2 * t)];
    const auto j = v.values[static_cast<std::size_t>(2 * t + 1)];
    ++m[form_variable_index(n, alpha, i, j)];
  }
  poly.add_term(m, Rational(v.sign * w.sign));
}

} // namespace

SparsePolynomial evaluate_polynomial(const GeneratorId& g)
{
  check_assignment_budget(g);
  const auto vars = form_variables(g.n, g.k);
  const auto vs = epsilon_assignments(g.n, g.sigma);
  const auto ws = epsilon_assignments(g.k, g.eta);

  const int threads = omp_get_max_threads();
  std::vector<SparsePolynomial> partial(static_cast<std::size_t>(threads), SparsePolynomial(vars));
#pragma omp parallel
  {
    auto& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
    Monomial m(vars->size());
#pragma omp for schedule(static)
    for (std::size_t a = 0; a < vs.size(); ++a)
      for (const auto& w : ws)
        accumulate(local, g.n, g.r, vs[a], w, m);
  }
  SparsePolynomial out(vars);
  for (const auto& p : partial)
    out += p;
  return out;
}

SparsePolynomial evaluate_polynomial(const BlockForm& form)
{
  return Rational(form.sign) * evaluate_polynomial(representative(form));
}

std::vector<SparsePolynomial> evaluate_batch(const std::vector<GeneratorId>& generators)
{
  std::vector<SparsePolynomial> out(generators.size());
  // Nested regions fall back to one thread, so each generator is evaluated serially here.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < generators.size(); ++i)
    out[i] = reference::evaluate_polynomial(generators[i]);
  return out;
}

SparsePolynomial contract_with_form_power(const SparseTensor& t, int n, int k, int r)
{
  std::vector<Axis> expected(static_cast<std::size_t>(2 * r), Axis{AxisKind::V, n});
  expected.resize(static_cast<std::size_t>(3 * r), Axis{AxisKind::WDual, k});
  if (!(t.profile() == AxisProfile(expected)))
    throw ShapeError("expected a V^{2r} (x) W*^{r} tensor");
  const auto vars = form_variables(n, k);
  SparsePolynomial out(vars);
  Monomial m(vars->size());
  t.for_each([&](std::span<const int> index, const Rational& c) {
    std::fill(m.begin(), m.end(), 0u);
    for (int f = 0; f < r; ++f) {
      const int alpha = index[static_cast<std::size_t>(2 * r + f)];
      ++m[form_variable_index(n, alpha, index[static_cast<std::size_t>(2 * f)],
                              index[static_cast<std::size_t>(2 * f + 1)])];
    }
    out.add_term(m, c);
  });
  return out;
}

Rational contract_at(const SparseTensor& t, const BilinearForm& form)
{
  const auto order = static_cast<int>(t.profile().order());
  if (order % 3 != 0)
    throw ShapeError("expected a V^{2r} (x) W*^{r} tensor");
  const int r = order / 3;
  Rational total = 0;
  t.for_each([&](std::span<const int> index, const Rational& c) {
    Rational term = c;
    for (int f = 0; f < r && !is_zero(term); ++f)
      term *= form.at(index[static_cast<std::size_t>(2 * r + f)], index[static_cast<std::size_t>(2 * f)],
                      index[static_cast<std::size_t>(2 * f + 1)]);
    total += term;
  });
  return total;
}

Rational evaluate_at(const GeneratorId& g, const BilinearForm& form)
{
  if (form.n() != g.n || form.k() != g.k)
    throw DimensionError("form dimensions (" + std::to_string(form.n()) + ", " + std::to_string(form.k()) +
                         ") do not match the generator (" + std::to_string(g.n) + ", " + std::to_string(g.k) + ")");
  return evaluate_polynomial(g).evaluate(form.values());
}

BilinearForm transform_form(const BilinearForm& form, const RationalMatrix& a, const RationalMatrix& p)
{
  const int n = form.n(), k = form.k();
  if (a.rows() != static_cast<std::size_t>(n) || a.cols() != static_cast<std::size_t>(n))
    throw DimensionError("a must be n x n");
  if (p.rows() != static_cast<std::size_t>(k) || p.cols() != static_cast<std::size_t>(k))
    throw DimensionError("p must be k x k");
  const RationalMatrix ainv = inverse(a);

  BilinearForm pulled(n, k);
  for (int beta = 1; beta <= k; ++beta)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        Rational s = 0;
        for (int u = 1; u <= n; ++u)
          for (int v = 1; v <= n; ++v)
            s += ainv.at(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(i - 1)) * form.at(beta, u, v) *
                 ainv.at(static_cast<std::size_t>(v - 1), static_cast<std::size_t>(j - 1));
        pulled.at(beta, i, j) = s;
      }

  BilinearForm out(n, k);
  for (int alpha = 1; alpha <= k; ++alpha)
    for (int beta = 1; beta <= k; ++beta) {
      const Rational c = p.at(static_cast<std::size_t>(alpha - 1), static_cast<std::size_t>(beta - 1));
      if (is_zero(c))
        continue;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          out.at(alpha, i, j) += c * pulled.at(beta, i, j);
    }
  return out;
}

WeightCheckResult weight_check(const GeneratorId& g, const BilinearForm& form, const RationalMatrix& a,
                               const RationalMatrix& p)
{
  if (form.n() != g.n || form.k() != g.k)
    throw DimensionError("form dimensions do not match the generator");
  const Rational det_a = determinant(a);
  const Rational det_p = determinant(p);
  if (is_zero(det_a) || is_zero(det_p))
    throw std::domain_error("weight check needs invertible a and p");

  const SparsePolynomial f = evaluate_polynomial(g);
  WeightCheckResult out;
  out.weight = pow(det_a, -2L * g.r / g.n) * pow(det_p, static_cast<long>(g.r / g.k));
  out.transformed_value = f.evaluate(transform_form(form, a, p).values());
  out.predicted_value = out.weight * f.evaluate(form.values());
  out.pass = out.transformed_value == out.predicted_value;
  return out;
}

namespace reference {

SparsePolynomial evaluate_polynomial(const GeneratorId& g)
{
  check_assignment_budget(g);
  const auto vars = form_variables(g.n, g.k);
  const auto vs = epsilon_assignments(g.n, g.sigma);
  const auto ws = epsilon_assignments(g.k, g.eta);
  SparsePolynomial out(vars);
  Monomial m(vars->size());
  for (const auto& v : vs)
    for (const auto& w : ws)
      accumulate(out, g.n, g.r, v, w, m);
  return out;
}

std::vector<SparsePolynomial> evaluate_batch(const std::vector<GeneratorId>& generators)
{
  std::vector<SparsePolynomial> out;
  out.reserve(generators.size());
  for (const auto& g : generators)
    out.push_back(reference::evaluate_polynomial(g));
  return out;
}

} // namespace reference

} // namespace bilinv
