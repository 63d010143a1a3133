#include "bilinv/relations.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "bilinv/errors.hpp"
#include "bilinv/parallel.hpp"

namespace bilinv {

const char* to_string(RelationKind kind)
{
  switch (kind) {
  case RelationKind::Trivial:
    return "trivial";
  case RelationKind::TypeA:
    return "typeA";
  case RelationKind::TypeB:
    return "typeB";
  case RelationKind::Symmetrized:
    return "symmetrized";
  }
  return "?";
}

const char* to_string(RelationSide side)
{
  switch (side) {
  case RelationSide::V:
    return "V";
  case RelationSide::W:
    return "W";
  case RelationSide::Both:
    return "both";
  }
  return "?";
}

const char* to_string(Construction c)
{
  return c == Construction::Literal ? "literal" : "shuffle";
}

ShuffleSpec::ShuffleSpec(Permutation base_, std::vector<int> slots_)
  : base(std::move(base_)), slots(std::move(slots_))
{
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end())
    throw DomainError("shuffle slots must be distinct");
  for (int s : slots)
    if (s < 1 || s > base.degree())
      throw DomainError("shuffle slot " + std::to_string(s) + " outside 1.." + std::to_string(base.degree()));
}

namespace {

SparseTensor term_tensor(const RelationCertificate& c, const RelationTerm& t)
{
  switch (c.side) {
  case RelationSide::V:
    return build_v(c.n, c.r, *t.sigma);
  case RelationSide::W:
    return build_w(c.k, c.r, *t.eta);
  case RelationSide::Both:
    break;
  }
  auto product = tensor_product(build_v(c.n, c.r, *t.sigma), build_w(c.k, c.r, *t.eta));
  if (c.kind == RelationKind::Symmetrized)
    return symmetrize(interleave_triples(product));
  return product;
}

SparseTensor empty_tensor(const RelationCertificate& c)
{
  switch (c.side) {
  case RelationSide::V:
    return SparseTensor(AxisProfile::repeated(AxisKind::V, c.n, 2 * c.r));
  case RelationSide::W:
    return SparseTensor(AxisProfile::repeated(AxisKind::WDual, c.k, c.r));
  case RelationSide::Both:
    break;
  }
  if (c.kind == RelationKind::Symmetrized)
    return SparseTensor(AxisProfile::triples(c.n, c.k, c.r));
  return SparseTensor(concat(AxisProfile::repeated(AxisKind::V, c.n, 2 * c.r),
                             AxisProfile::repeated(AxisKind::WDual, c.k, c.r)));
}

RelationTerm one_sided_term(RelationSide side, Rational coef, Permutation p)
{
  RelationTerm t{std::move(coef), std::nullopt, std::nullopt};
  (side == RelationSide::V ? t.sigma : t.eta) = std::move(p);
  return t;
}

// sigma_j agrees with sigma off the slots; on slots i_1..i_{m+1} it keeps sigma(i_l)
// for l < j, puts sigma(i_{m+1}) at i_j, and shifts sigma(i_{l-1}) into i_l for l > j.
// sigma_{m+1} is the base itself; it is listed first with coefficient +1.
std::vector<RelationTerm> literal_terms(RelationSide side, const ShuffleSpec& spec)
{
  const auto& slots = spec.slots;
  const std::size_t count = slots.size();
  std::vector<RelationTerm> terms;
  for (std::size_t j = count; j >= 1; --j) {
    std::vector<int> images = spec.base.images();
    for (std::size_t l = 1; l <= count; ++l) {
      int source;
      if (l < j)
        source = slots[l - 1];
      else if (l > j)
        source = slots[l - 2];
      else
        source = slots[count - 1];
      images[static_cast<std::size_t>(slots[l - 1] - 1)] = spec.base(source);
    }
    const int sign = (count - j) % 2 == 0 ? 1 : -1;
    terms.push_back(one_sided_term(side, sign, Permutation(std::move(images))));
  }
  return terms;
}

// Sum over pi in Sym(slots) of sgn(pi) t_{base o pi}, collected on block classes.
std::vector<RelationTerm> antisymmetrized_terms(RelationSide side, int block_size, const ShuffleSpec& spec)
{
  const auto& slots = spec.slots;
  struct ClassEntry {
    Permutation representative;
    int representative_sign;
    Integer coefficient;
  };
  std::vector<ClassEntry> classes;
  std::map<std::vector<Block>, std::size_t> lookup;

  for_each_permutation(static_cast<int>(slots.size()), [&](const Permutation& pi) {
    std::vector<int> images = spec.base.images();
    for (std::size_t l = 0; l < slots.size(); ++l)
      images[static_cast<std::size_t>(slots[l] - 1)] =
        spec.base(slots[static_cast<std::size_t>(pi(static_cast<int>(l) + 1) - 1)]);
    Permutation shuffled(std::move(images));
    auto canon = canonical_blocks(block_size, shuffled);
    auto [it, inserted] = lookup.try_emplace(canon.blocks, classes.size());
    if (inserted)
      classes.push_back({shuffled, canon.sign, 0});
    classes[it->second].coefficient += parity(pi) * canon.sign;
  });

  Integer g = 0;
  for (const auto& c : classes)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.coefficient.get_mpz_t());
  std::vector<RelationTerm> terms;
  if (g == 0)
    return terms;
  int orientation = 0;
  for (const auto& c : classes) {
    if (c.coefficient == 0)
      continue;
    Integer reduced = c.coefficient / g;
    if (orientation == 0)
      orientation = sgn(reduced) * c.representative_sign;
    terms.push_back(one_sided_term(side, Rational(reduced * c.representative_sign * orientation),
                                   c.representative));
  }
  return terms;
}

RelationCertificate shuffle_relation(RelationKind kind, RelationSide side, int block_size, int r,
                                     const ShuffleSpec& spec)
{
  const int degree = side == RelationSide::V ? 2 * r : r;
  if (spec.base.degree() != degree)
    throw DomainError("shuffle base permutation has the wrong degree");
  if (static_cast<int>(spec.slots.size()) != block_size + 1)
    throw DomainError("shuffle spec needs exactly block_size + 1 slots");

  RelationCertificate c;
  c.kind = kind;
  c.side = side;
  c.r = r;
  (side == RelationSide::V ? c.n : c.k) = block_size;
  c.construction = Construction::Literal;
  c.terms = literal_terms(side, spec);
  if (verify(c)) {
    c.verified = true;
    return c;
  }
  c.construction = Construction::Shuffle;
  c.terms = antisymmetrized_terms(side, block_size, spec);
  if (!verify(c))
    throw ConstructionError("antisymmetrized relation failed to expand to zero");
  c.verified = true;
  return c;
}

} // namespace

RelationCertificate typeA_relation(int n, int r, const ShuffleSpec& spec)
{
  if (n < 1 || r < 1 || (2 * r) % n != 0)
    throw DivisibilityError("no invariants: n does not divide 2r");
  return shuffle_relation(RelationKind::TypeA, RelationSide::V, n, r, spec);
}

RelationCertificate typeB_relation(int k, int r, const ShuffleSpec& spec)
{
  if (k < 1 || r < 1 || r % k != 0)
    throw DivisibilityError("no invariants: k does not divide r");
  return shuffle_relation(RelationKind::TypeB, RelationSide::W, k, r, spec);
}

RelationCertificate trivial_relation(RelationSide side, int block_size, const Permutation& p, const Permutation& q)
{
  if (side == RelationSide::Both)
    throw UsageError("trivial relations are one-sided");
  auto sign = relative_sign(block_size, p, q);
  if (!sign)
    throw UsageError("permutations do not share epsilon blocks");
  RelationCertificate c;
  c.kind = RelationKind::Trivial;
  c.side = side;
  if (side == RelationSide::V) {
    c.n = block_size;
    c.r = p.degree() / 2;
  } else {
    c.k = block_size;
    c.r = p.degree();
  }
  c.terms.push_back(one_sided_term(side, 1, p));
  c.terms.push_back(one_sided_term(side, -*sign, q));
  c.verified = verify(c);
  if (!c.verified)
    throw ConstructionError("trivial relation failed to expand to zero");
  return c;
}

std::vector<RelationCertificate> trivial_relations(int n, int k, int r, std::size_t limit)
{
  if (!existence_gate(n, k, r))
    throw DivisibilityError("no invariants: n does not divide 2r or k does not divide r");
  if (static_cast<long double>(factorial(2 * r)) + static_cast<long double>(factorial(r)) >
      static_cast<long double>(limit))
    throw SizeError("trivial relation list exceeds the limit");

  std::vector<RelationCertificate> out;
  auto side_relations = [&](RelationSide side, int block_size, int degree) {
    for_each_permutation(degree, [&](const Permutation& p) {
      auto canon = canonical_blocks(block_size, p);
      Permutation rep = permutation_from_blocks(canon.blocks);
      if (p == rep)
        return;
      RelationCertificate c;
      c.kind = RelationKind::Trivial;
      c.side = side;
      c.r = r;
      (side == RelationSide::V ? c.n : c.k) = block_size;
      c.terms.push_back(one_sided_term(side, 1, p));
      c.terms.push_back(one_sided_term(side, -canon.sign, rep));
      out.push_back(std::move(c));
    });
  };
  side_relations(RelationSide::V, n, 2 * r);
  side_relations(RelationSide::W, k, r);

  const auto ok = verify_all(out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!ok[i])
      throw ConstructionError("trivial relation failed to expand to zero");
    out[i].verified = true;
  }
  return out;
}

RelationCertificate combined_relation(int n, int k, const RelationOperand& v_part, const RelationOperand& w_part)
{
  const auto* v_rel = std::get_if<RelationCertificate>(&v_part);
  const auto* w_rel = std::get_if<RelationCertificate>(&w_part);
  if ((v_rel != nullptr) == (w_rel != nullptr))
    throw UsageError("combine exactly one relation with one generator");

  RelationCertificate c;
  c.side = RelationSide::Both;
  c.n = n;
  c.k = k;
  if (v_rel != nullptr) {
    if (v_rel->side != RelationSide::V || !v_rel->verified)
      throw UsageError("V operand must be a verified V-side relation");
    const auto& eta = std::get<Permutation>(w_part);
    c.kind = v_rel->kind;
    c.construction = v_rel->construction;
    c.r = v_rel->r;
    if (v_rel->n != n || eta.degree() != c.r)
      throw DimensionError("generator does not match the relation's degree");
    for (const auto& t : v_rel->terms)
      c.terms.push_back(RelationTerm{t.coef, t.sigma, eta});
  } else {
    if (w_rel->side != RelationSide::W || !w_rel->verified)
      throw UsageError("W operand must be a verified W-side relation");
    const auto& sigma = std::get<Permutation>(v_part);
    c.kind = w_rel->kind;
    c.construction = w_rel->construction;
    c.r = w_rel->r;
    if (w_rel->k != k || sigma.degree() != 2 * c.r)
      throw DimensionError("generator does not match the relation's degree");
    for (const auto& t : w_rel->terms)
      c.terms.push_back(RelationTerm{t.coef, sigma, t.eta});
  }
  if (!existence_gate(n, k, c.r))
    throw DivisibilityError("no invariants: n does not divide 2r or k does not divide r");
  c.verified = verify(c);
  if (!c.verified)
    throw ConstructionError("combined relation failed to expand to zero");
  return c;
}

SparsePolynomial expand_polynomial(const RelationCertificate& c)
{
  if (c.side != RelationSide::Both)
    throw UsageError("only two-sided relations evaluate to polynomials");
  SparsePolynomial total(form_variables(c.n, c.k));
  for (const auto& t : c.terms)
    total += t.coef * evaluate_polynomial(GeneratorId(c.n, c.k, c.r, *t.sigma, *t.eta));
  return total;
}

RelationCertificate symmetrized_relation(const RelationCertificate& c)
{
  if (c.side != RelationSide::Both)
    throw UsageError("symmetrize a two-sided relation");
  if (!c.verified)
    throw UsageError("symmetrize only verified relations");
  RelationCertificate s = c;
  s.kind = RelationKind::Symmetrized;
  s.terms.clear();
  s.dropped.clear();
  SparsePolynomial total(form_variables(c.n, c.k));
  for (const auto& t : c.terms) {
    auto poly = evaluate_polynomial(GeneratorId(c.n, c.k, c.r, *t.sigma, *t.eta));
    if (poly.is_zero()) {
      s.dropped.push_back(t);
      continue;
    }
    total += t.coef * poly;
    s.terms.push_back(t);
  }
  s.verified = total.is_zero();
  return s;
}

SparseTensor expand(const RelationCertificate& c)
{
  SparseTensor total = empty_tensor(c);
  for (const auto& t : c.terms)
    total += t.coef * term_tensor(c, t);
  return total;
}

bool verify(const RelationCertificate& c)
{
  if (c.kind == RelationKind::Symmetrized)
    return expand_polynomial(c).is_zero();
  return expand(c).is_zero();
}

std::vector<bool> verify_all(const std::vector<RelationCertificate>& certificates)
{
  std::vector<char> ok(certificates.size(), 0);
  parallel_for(certificates.size(), [&](std::size_t i) { ok[i] = verify(certificates[i]) ? 1 : 0; });
  return std::vector<bool>(ok.begin(), ok.end());
}

std::vector<std::vector<int>> slot_subsets(int subset_size, int total)
{
  std::vector<std::vector<int>> out;
  if (subset_size > total || subset_size < 1)
    return out;
  std::vector<bool> pick(static_cast<std::size_t>(total), false);
  std::fill(pick.begin(), pick.begin() + subset_size, true);
  do {
    std::vector<int> subset;
    for (int i = 0; i < total; ++i)
      if (pick[static_cast<std::size_t>(i)])
        subset.push_back(i + 1);
    out.push_back(std::move(subset));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

bool KernelSpanReport::spanned() const
{
  if (!gate || truncated)
    return false;
  return (!classes || classes->spanned()) && (!raw || raw->spanned());
}

namespace {

std::string blocks_label(const std::vector<Block>& blocks)
{
  std::string out = "[";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    out += (b ? ",[" : "[");
    for (std::size_t i = 0; i < blocks[b].size(); ++i)
      out += (i ? "," : "") + std::to_string(blocks[b][i]);
    out += "]";
  }
  return out + "]";
}

// Maps a two-sided term to a (column, coefficient) pair in some generator basis.
using ColumnLocator = std::function<std::pair<std::size_t, Rational>(const RelationTerm&)>;

KernelLevelReport analyse_level(std::string level, const std::vector<SparseTensor>& column_tensors,
                                std::vector<std::string> labels,
                                const std::vector<RelationCertificate>& relations, const ColumnLocator& locate)
{
  KernelLevelReport report;
  report.level = std::move(level);
  report.columns = column_tensors.size();
  report.column_labels = std::move(labels);

  // Rows of the generator matrix are the ambient coordinates any generator touches.
  std::map<SparseTensor::Key, std::size_t> row_of;
  for (const auto& t : column_tensors)
    for (const auto& [key, c] : t.entries())
      row_of.try_emplace(key, 0);
  std::size_t next = 0;
  for (auto& [key, row] : row_of)
    row = next++;
  report.ambient_support = row_of.size();

  RationalMatrix m(row_of.size(), column_tensors.size());
  for (std::size_t j = 0; j < column_tensors.size(); ++j)
    for (const auto& [key, c] : column_tensors[j].entries())
      m.set(row_of.at(key), j, c);

  RowEchelon image(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    image.insert(m.row(i));
  report.rank = image.rank();
  const auto kernel = image.kernel_basis();
  report.kernel_dim = kernel.size();

  std::vector<SparseVector> vectors(relations.size());
  parallel_for(relations.size(), [&](std::size_t i) {
    for (const auto& t : relations[i].terms) {
      auto [col, coef] = locate(t);
      vectors[i][col] += coef;
    }
    for (auto it = vectors[i].begin(); it != vectors[i].end();)
      it = is_zero(it->second) ? vectors[i].erase(it) : std::next(it);
  });

  RowEchelon span(m.cols());
  for (const auto& v : vectors) {
    if (v.empty())
      continue;
    ++report.relation_count;
    const auto image_of_v = m.multiply(to_dense(v, m.cols()));
    if (std::any_of(image_of_v.begin(), image_of_v.end(), [](const Rational& x) { return !is_zero(x); }))
      ++report.relations_outside_kernel;
    span.insert(v);
  }
  report.relation_span_dim = span.rank();
  for (const auto& k : kernel) {
    auto sv = to_sparse(k);
    if (!span.contains(sv)) {
      span.insert(sv);
      report.deficit.push_back(k);
    }
  }
  return report;
}

std::vector<Permutation> all_permutations(int m)
{
  std::vector<Permutation> out;
  for_each_permutation(m, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

// typeA(sigma, S) (x) w^eta and v_sigma (x) typeB(eta, S) for the given generator sources.
std::vector<RelationCertificate> exchange_relations(int n, int k, int r, const std::vector<Permutation>& sigmas,
                                                    const std::vector<Permutation>& etas)
{
  struct Job {
    bool v_side;
    std::size_t base;
    std::vector<int> slots;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < sigmas.size(); ++s)
    for (auto& subset : slot_subsets(n + 1, 2 * r))
      jobs.push_back({true, s, subset});
  for (std::size_t e = 0; e < etas.size(); ++e)
    for (auto& subset : slot_subsets(k + 1, r))
      jobs.push_back({false, e, subset});

  std::vector<std::vector<RelationCertificate>> per_job(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const auto& job = jobs[i];
    if (job.v_side) {
      auto side = typeA_relation(n, r, ShuffleSpec(sigmas[job.base], job.slots));
      for (const auto& eta : etas)
        per_job[i].push_back(combined_relation(n, k, side, eta));
    } else {
      auto side = typeB_relation(k, r, ShuffleSpec(etas[job.base], job.slots));
      for (const auto& sigma : sigmas)
        per_job[i].push_back(combined_relation(n, k, sigma, side));
    }
  });
  std::vector<RelationCertificate> out;
  for (auto& batch : per_job)
    for (auto& c : batch)
      out.push_back(std::move(c));
  return out;
}

KernelLevelReport class_level(int n, int k, int r)
{
  const auto v_parts = block_partitions(n, 2 * r);
  const auto w_parts = block_partitions(k, r);
  std::map<std::vector<Block>, std::size_t> v_index, w_index;
  std::vector<Permutation> v_reps, w_reps;
  for (std::size_t i = 0; i < v_parts.size(); ++i) {
    v_index.emplace(v_parts[i], i);
    v_reps.push_back(permutation_from_blocks(v_parts[i]));
  }
  for (std::size_t i = 0; i < w_parts.size(); ++i) {
    w_index.emplace(w_parts[i], i);
    w_reps.push_back(permutation_from_blocks(w_parts[i]));
  }

  std::vector<SparseTensor> columns(v_parts.size() * w_parts.size());
  std::vector<std::string> labels(columns.size());
  parallel_for(columns.size(), [&](std::size_t c) {
    const std::size_t vi = c / w_parts.size(), wi = c % w_parts.size();
    columns[c] = generator_tensor(GeneratorId(n, k, r, v_reps[vi], w_reps[wi]));
    labels[c] = "v" + blocks_label(v_parts[vi]) + " w" + blocks_label(w_parts[wi]);
  });

  const auto relations = exchange_relations(n, k, r, v_reps, w_reps);
  const std::size_t w_count = w_parts.size();
  return analyse_level("classes", columns, std::move(labels), relations, [&](const RelationTerm& t) {
    auto v = canonical_blocks(n, *t.sigma);
    auto w = canonical_blocks(k, *t.eta);
    const std::size_t col = v_index.at(v.blocks) * w_count + w_index.at(w.blocks);
    return std::pair<std::size_t, Rational>(col, t.coef * v.sign * w.sign);
  });
}

KernelLevelReport raw_level(int n, int k, int r)
{
  const auto sigmas = all_permutations(2 * r);
  const auto etas = all_permutations(r);
  std::unordered_map<Permutation, std::size_t> sigma_index, eta_index;
  for (std::size_t i = 0; i < sigmas.size(); ++i)
    sigma_index.emplace(sigmas[i], i);
  for (std::size_t i = 0; i < etas.size(); ++i)
    eta_index.emplace(etas[i], i);

  std::vector<SparseTensor> columns(sigmas.size() * etas.size());
  std::vector<std::string> labels(columns.size());
  parallel_for(columns.size(), [&](std::size_t c) {
    const std::size_t si = c / etas.size(), ei = c % etas.size();
    columns[c] = generator_tensor(GeneratorId(n, k, r, sigmas[si], etas[ei]));
    labels[c] = "sigma " + sigmas[si].to_cycle_string() + " eta " + etas[ei].to_cycle_string();
  });

  auto relations = exchange_relations(n, k, r, sigmas, etas);
  for (const auto& trivial : trivial_relations(n, k, r)) {
    if (trivial.side == RelationSide::V) {
      for (const auto& eta : etas)
        relations.push_back(combined_relation(n, k, trivial, eta));
    } else {
      for (const auto& sigma : sigmas)
        relations.push_back(combined_relation(n, k, sigma, trivial));
    }
  }
  const std::size_t e_count = etas.size();
  return analyse_level("raw", columns, std::move(labels), relations, [&](const RelationTerm& t) {
    return std::pair<std::size_t, Rational>(sigma_index.at(*t.sigma) * e_count + eta_index.at(*t.eta), t.coef);
  });
}

} // namespace

KernelSpanReport kernel_span_check(int n, int k, int r, std::size_t budget)
{
  KernelSpanReport report;
  report.n = n;
  report.k = k;
  report.r = r;
  report.gate = existence_gate(n, k, r);
  if (!report.gate)
    return report;

  const Integer classes = count_distinct(n, k, r);
  if (classes > Integer(static_cast<unsigned long>(budget))) {
    report.truncated = true;
    report.truncation_reason = "distinct classes (" + classes.get_str() + ") exceed the budget of " +
                               std::to_string(budget) + " columns";
    return report;
  }
  report.classes = class_level(n, k, r);

  Integer raw_count, eta_count;
  mpz_fac_ui(raw_count.get_mpz_t(), static_cast<unsigned long>(2 * r));
  mpz_fac_ui(eta_count.get_mpz_t(), static_cast<unsigned long>(r));
  raw_count *= eta_count;
  if (raw_count <= Integer(static_cast<unsigned long>(budget)))
    report.raw = raw_level(n, k, r);
  return report;
}

namespace reference {

std::vector<bool> verify_all(const std::vector<RelationCertificate>& certificates)
{
  std::vector<bool> ok;
  ok.reserve(certificates.size());
  for (const auto& c : certificates)
    ok.push_back(verify(c));
  return ok;
}

} // namespace reference

} // namespace bilinv
