#include "bilinv/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bilinv/errors.hpp"

namespace bilinv {

namespace {

const json& field(const json& doc, const char* name)
{
  if (!doc.is_object() || !doc.contains(name))
    throw FormatError(std::string("missing field \"") + name + "\"");
  return doc.at(name);
}

int int_field(const json& doc, const char* name)
{
  const auto& v = field(doc, name);
  if (!v.is_number_integer())
    throw FormatError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

std::string string_field(const json& doc, const char* name)
{
  const auto& v = field(doc, name);
  if (!v.is_string())
    throw FormatError(std::string("field \"") + name + "\" must be a string");
  return v.get<std::string>();
}

Permutation permutation_field(const json& doc, const char* name, int degree)
{
  try {
    return Permutation::from_cycles(string_field(doc, name), degree);
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string("field \"") + name + "\": " + e.what());
  }
}

std::vector<Block> blocks_field(const json& doc, const char* name)
{
  const auto& v = field(doc, name);
  if (!v.is_array() || v.empty())
    throw FormatError(std::string("field \"") + name + "\" must be a non-empty array of blocks");
  std::vector<Block> blocks;
  for (const auto& b : v) {
    if (!b.is_array())
      throw FormatError("each block must be an array of slot labels");
    Block block;
    for (const auto& s : b) {
      if (!s.is_number_integer())
        throw FormatError("slot labels must be integers");
      block.push_back(s.get<int>());
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

json blocks_to_json(const std::vector<Block>& blocks)
{
  json out = json::array();
  for (const auto& b : blocks)
    out.push_back(b);
  return out;
}

// Validates a block list as a partition of 1..m*d into equal-sized blocks.
void check_partition(const std::vector<Block>& blocks, const char* name)
{
  const std::size_t size = blocks.front().size();
  std::vector<bool> seen(size * blocks.size() + 1, false);
  for (const auto& b : blocks) {
    if (b.size() != size || size == 0)
      throw FormatError(std::string(name) + ": blocks must share one non-zero size");
    for (int s : b) {
      if (s < 1 || static_cast<std::size_t>(s) >= seen.size() || seen[static_cast<std::size_t>(s)])
        throw FormatError(std::string(name) + ": blocks must partition 1.." + std::to_string(seen.size() - 1));
      seen[static_cast<std::size_t>(s)] = true;
    }
  }
}

} // namespace

json parse_json(const std::string& text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw FormatError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

std::string dump(const json& doc)
{
  return doc.dump(2);
}

json rational_to_json(const Rational& q)
{
  return to_string(q);
}

Rational rational_from_json(const json& v)
{
  try {
    if (v.is_number_integer())
      return Rational(v.get<long>());
    if (v.is_string())
      return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("rational values must be strings like \"p/q\" or integers");
}

json to_json(const SparseTensor& t)
{
  json profile = json::array();
  for (const auto& axis : t.profile().axes())
    profile.push_back({{"kind", axis.kind == AxisKind::V ? "V" : "W*"}, {"dim", axis.dim}});
  json entries = json::array();
  t.for_each([&](std::span<const int> idx, const Rational& c) {
    entries.push_back({{"idx", std::vector<int>(idx.begin(), idx.end())},
                       {"num", numerator_string(c)},
                       {"den", denominator_string(c)}});
  });
  return {{"profile", profile}, {"entries", entries}};
}

SparseTensor tensor_from_json(const json& doc)
{
  std::vector<Axis> axes;
  const auto& profile = field(doc, "profile");
  if (!profile.is_array())
    throw FormatError("\"profile\" must be an array");
  for (const auto& a : profile) {
    const auto kind = string_field(a, "kind");
    if (kind != "V" && kind != "W*" && kind != "W")
      throw FormatError("axis kind must be \"V\" or \"W*\"");
    axes.push_back({kind == "V" ? AxisKind::V : AxisKind::WDual, int_field(a, "dim")});
  }
  SparseTensor t{AxisProfile(std::move(axes))};
  const auto& entries = field(doc, "entries");
  if (!entries.is_array())
    throw FormatError("\"entries\" must be an array");
  for (const auto& e : entries) {
    const auto& idx = field(e, "idx");
    if (!idx.is_array() || idx.size() != t.profile().order())
      throw DimensionError("entry index length does not match the profile");
    std::vector<int> index = idx.get<std::vector<int>>();
    Rational c;
    try {
      c = parse_rational(string_field(e, "num"), string_field(e, "den"));
    } catch (const std::invalid_argument& err) {
      throw FormatError(err.what());
    }
    t.add(index, c);
  }
  return t;
}

json to_json(const BilinearForm& form)
{
  json matrices = json::array();
  for (int a = 1; a <= form.k(); ++a) {
    json m = json::array();
    for (int i = 1; i <= form.n(); ++i) {
      json row = json::array();
      for (int j = 1; j <= form.n(); ++j)
        row.push_back(rational_to_json(form.at(a, i, j)));
      m.push_back(row);
    }
    matrices.push_back(m);
  }
  return {{"n", form.n()}, {"k", form.k()}, {"matrices", matrices}};
}

BilinearForm form_from_json(const json& doc)
{
  const int n = int_field(doc, "n");
  const int k = int_field(doc, "k");
  const auto& ms = field(doc, "matrices");
  if (!ms.is_array())
    throw FormatError("\"matrices\" must be an array");
  std::vector<std::vector<std::vector<Rational>>> matrices;
  for (const auto& m : ms) {
    if (!m.is_array())
      throw FormatError("each matrix must be an array of rows");
    auto& out = matrices.emplace_back();
    for (const auto& row : m) {
      if (!row.is_array())
        throw FormatError("each matrix row must be an array");
      auto& r = out.emplace_back();
      for (const auto& v : row)
        r.push_back(rational_from_json(v));
    }
  }
  return BilinearForm(n, k, matrices);
}

json to_json(const RationalMatrix& m)
{
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(rational_to_json(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix matrix_from_json(const json& doc)
{
  if (!doc.is_array() || doc.empty())
    throw FormatError("a matrix is a non-empty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : doc) {
    if (!row.is_array())
      throw FormatError("each matrix row must be an array");
    auto& r = rows.emplace_back();
    for (const auto& v : row)
      r.push_back(rational_from_json(v));
    if (r.size() != rows.front().size())
      throw DimensionError("ragged matrix rows");
  }
  return RationalMatrix::from_rows(rows);
}

json to_json(const GeneratorId& g)
{
  return {{"sigma", g.sigma.to_cycle_string()}, {"eta", g.eta.to_cycle_string()},
          {"n", g.n}, {"k", g.k}, {"r", g.r}};
}

json to_json(const BlockForm& form)
{
  return {{"v_blocks", blocks_to_json(form.v_blocks)}, {"w_blocks", blocks_to_json(form.w_blocks)},
          {"sign", form.sign}};
}

GeneratorSpec generator_from_json(const json& doc)
{
  if (!doc.is_object())
    throw FormatError("a generator is a JSON object");
  if (doc.contains("v_blocks")) {
    BlockForm form;
    form.v_blocks = blocks_field(doc, "v_blocks");
    form.w_blocks = blocks_field(doc, "w_blocks");
    form.sign = doc.contains("sign") ? int_field(doc, "sign") : 1;
    if (form.sign != 1 && form.sign != -1)
      throw FormatError("\"sign\" must be 1 or -1");
    check_partition(form.v_blocks, "v_blocks");
    check_partition(form.w_blocks, "w_blocks");
    if (form.v_blocks.size() * form.n() != 2 * form.w_blocks.size() * form.k())
      throw DimensionError("v_blocks must cover twice as many slots as w_blocks");
    const Permutation sigma = permutation_from_blocks(form.v_blocks);
    const Permutation eta = permutation_from_blocks(form.w_blocks);
    return {GeneratorId(form.n(), form.k(), form.r(), sigma, eta), form.sign};
  }
  const int n = int_field(doc, "n");
  const int k = int_field(doc, "k");
  const int r = int_field(doc, "r");
  if (n < 1 || k < 1 || r < 1)
    throw FormatError("n, k and r must be positive");
  return {GeneratorId(n, k, r, permutation_field(doc, "sigma", 2 * r), permutation_field(doc, "eta", r)), 1};
}

json to_json(const SparsePolynomial& p)
{
  json terms = json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back({{"exps", m}, {"num", numerator_string(c)}, {"den", denominator_string(c)}});
  json vars = p.variables() ? json(p.variables()->names) : json::array();
  return {{"vars", vars}, {"terms", terms}};
}

SparsePolynomial polynomial_from_json(const json& doc, const VariableSetPtr& vars)
{
  const auto& names = field(doc, "vars");
  if (!names.is_array() || names.get<std::vector<std::string>>() != vars->names)
    throw DimensionError("polynomial variables do not match");
  SparsePolynomial p(vars);
  for (const auto& t : field(doc, "terms")) {
    const auto& exps = field(t, "exps");
    if (!exps.is_array() || exps.size() != vars->size())
      throw DimensionError("exponent vector length does not match the variables");
    try {
      p.add_term(exps.get<Monomial>(), parse_rational(string_field(t, "num"), string_field(t, "den")));
    } catch (const std::invalid_argument& e) {
      if (dynamic_cast<const DimensionError*>(&e))
        throw;
      throw FormatError(e.what());
    }
  }
  return p;
}

json to_json(const RelationCertificate& c)
{
  auto term_json = [](const RelationTerm& t) {
    json out = {{"coef", rational_to_json(t.coef)}};
    if (t.sigma)
      out["sigma"] = t.sigma->to_cycle_string();
    if (t.eta)
      out["eta"] = t.eta->to_cycle_string();
    return out;
  };
  json terms = json::array();
  for (const auto& t : c.terms)
    terms.push_back(term_json(t));
  json out = {{"kind", to_string(c.kind)},
              {"side", to_string(c.side)},
              {"construction", to_string(c.construction)},
              {"r", c.r},
              {"terms", terms},
              {"verified", c.verified}};
  if (c.n)
    out["n"] = c.n;
  if (c.k)
    out["k"] = c.k;
  if (c.kind == RelationKind::Symmetrized) {
    json dropped = json::array();
    for (const auto& t : c.dropped)
      dropped.push_back(term_json(t));
    out["dropped"] = dropped;
  }
  return out;
}

RelationCertificate certificate_from_json(const json& doc)
{
  RelationCertificate c;
  const auto kind = string_field(doc, "kind");
  if (kind == "trivial")
    c.kind = RelationKind::Trivial;
  else if (kind == "typeA")
    c.kind = RelationKind::TypeA;
  else if (kind == "typeB")
    c.kind = RelationKind::TypeB;
  else if (kind == "symmetrized")
    c.kind = RelationKind::Symmetrized;
  else
    throw FormatError("unknown relation kind \"" + kind + "\"");
  if (doc.contains("construction")) {
    const auto construction = string_field(doc, "construction");
    if (construction != "literal" && construction != "shuffle")
      throw FormatError("construction must be \"literal\" or \"shuffle\"");
    c.construction = construction == "literal" ? Construction::Literal : Construction::Shuffle;
  }
  c.n = doc.contains("n") ? int_field(doc, "n") : 0;
  c.k = doc.contains("k") ? int_field(doc, "k") : 0;
  c.verified = doc.contains("verified") && field(doc, "verified").get<bool>();

  const auto& terms = field(doc, "terms");
  if (!terms.is_array() || terms.empty())
    throw FormatError("\"terms\" must be a non-empty array");
  // Degrees come from the permutations when r is absent.
  auto degree_of = [](const std::string& cycles) {
    const bool separated = cycles.find_first_of(" ,") != std::string::npos;
    int best = 1, current = 0;
    for (char ch : cycles) {
      if (ch >= '0' && ch <= '9') {
        current = separated ? current * 10 + (ch - '0') : ch - '0';
        best = std::max(best, current);
      } else {
        current = 0;
      }
    }
    return best;
  };
  const bool has_sigma = terms.front().contains("sigma");
  const bool has_eta = terms.front().contains("eta");
  if (!has_sigma && !has_eta)
    throw FormatError("relation terms need \"sigma\" and/or \"eta\"");
  c.side = has_sigma && has_eta ? RelationSide::Both : (has_sigma ? RelationSide::V : RelationSide::W);
  if (c.side != RelationSide::W && c.n == 0)
    throw FormatError("V-side relations need \"n\"");
  if (c.side != RelationSide::V && c.k == 0)
    throw FormatError("W-side relations need \"k\"");
  if (doc.contains("r")) {
    c.r = int_field(doc, "r");
  } else {
    // Smallest degree that holds every label and satisfies the divisibility gate.
    int least = 1;
    for (const auto& t : terms) {
      if (has_eta)
        least = std::max(least, degree_of(string_field(t, "eta")));
      if (has_sigma)
        least = std::max(least, (degree_of(string_field(t, "sigma")) + 1) / 2);
    }
    c.r = least;
    while ((c.k && c.r % c.k) || (c.n && (2 * c.r) % c.n))
      ++c.r;
  }
  auto read_term = [&](const json& t) {
    RelationTerm term{rational_from_json(field(t, "coef")), std::nullopt, std::nullopt};
    if (has_sigma)
      term.sigma = permutation_field(t, "sigma", 2 * c.r);
    if (has_eta)
      term.eta = permutation_field(t, "eta", c.r);
    return term;
  };
  for (const auto& t : terms)
    c.terms.push_back(read_term(t));
  if (doc.contains("dropped"))
    for (const auto& t : field(doc, "dropped"))
      c.dropped.push_back(read_term(t));
  return c;
}

json to_json(const KernelLevelReport& level)
{
  json deficit = json::array();
  for (const auto& v : level.deficit) {
    json vec = json::array();
    for (const auto& x : v)
      vec.push_back(rational_to_json(x));
    deficit.push_back(vec);
  }
  return {{"level", level.level},
          {"columns", level.columns},
          {"ambient_support", level.ambient_support},
          {"rank", level.rank},
          {"kernel_dim", level.kernel_dim},
          {"relation_count", level.relation_count},
          {"relation_span_dim", level.relation_span_dim},
          {"relations_outside_kernel", level.relations_outside_kernel},
          {"deficit", deficit},
          {"column_labels", level.column_labels},
          {"spanned", level.spanned()}};
}

json to_json(const KernelSpanReport& report)
{
  json out = {{"n", report.n},   {"k", report.k}, {"r", report.r}, {"gate", report.gate},
              {"truncated", report.truncated}, {"spanned", report.spanned()}};
  if (report.truncated)
    out["truncation_reason"] = report.truncation_reason;
  if (report.classes)
    out["classes"] = to_json(*report.classes);
  if (report.raw)
    out["raw"] = to_json(*report.raw);
  return out;
}

json to_json(const WeightCheckResult& result)
{
  return {{"pass", result.pass},
          {"transformed_value", rational_to_json(result.transformed_value)},
          {"predicted_value", rational_to_json(result.predicted_value)},
          {"weight", rational_to_json(result.weight)}};
}

} // namespace bilinv
