#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bilinv/errors.hpp"
#include "bilinv/json_io.hpp"
#include "bilinv/parallel.hpp"
#include "bilinv/sampling.hpp"

using namespace bilinv;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNoInvariants = 2,
  kMalformed = 3,
  kDimension = 4,
  kBudget = 5,
  kCheckFailed = 6,
};

const char* const kNoInvariantsMessage = "no invariants: n∤" "2r or k∤r";

struct Options {
  bool pretty = false;
  int threads = 0;
};

struct GeneratorArgs {
  std::string file;
  std::string sigma;
  std::string eta;
  int n = 0;
  int k = 0;
  int r = 0;

  void attach(CLI::App* cmd)
  {
    cmd->add_option("--generator", file, "generator JSON file");
    cmd->add_option("--sigma", sigma, "V-side permutation in cycle notation");
    cmd->add_option("--eta", eta, "W-side permutation in cycle notation");
    cmd->add_option("-n", n, "dimension of V");
    cmd->add_option("-k", k, "dimension of W");
    cmd->add_option("-r", r, "degree");
  }

  GeneratorSpec resolve() const
  {
    if (!file.empty())
      return generator_from_json(read_json_file(file));
    if (sigma.empty() || eta.empty() || n < 1 || k < 1 || r < 1)
      throw UsageError("give --generator FILE or all of --sigma, --eta, -n, -k, -r");
    if (!existence_gate(n, k, r))
      throw DivisibilityError(kNoInvariantsMessage);
    return {GeneratorId(n, k, r, Permutation::from_cycles(sigma, 2 * r), Permutation::from_cycles(eta, r)), 1};
  }
};

void require_gate(int n, int k, int r)
{
  if (n < 1 || k < 1 || r < 1)
    throw UsageError("n, k and r must be positive");
  if (!existence_gate(n, k, r))
    throw DivisibilityError(kNoInvariantsMessage);
}

std::vector<int> parse_slots(const std::string& text)
{
  std::vector<int> slots;
  std::string token;
  std::stringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      slots.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw UsageError("slots must be a comma-separated list of integers");
    }
  }
  return slots;
}

std::string signed_term(const Rational& coef, const std::string& body, bool first)
{
  const bool negative = sgn(coef) < 0;
  const Rational magnitude = abs(coef);
  std::string out = first ? (negative ? "-" : "") : (negative ? " - " : " + ");
  if (magnitude != 1)
    out += to_string(magnitude) + "·";
  return out + body;
}

std::string pretty_term(const RelationTerm& t)
{
  std::string body;
  if (t.sigma)
    body += "v_" + t.sigma->to_cycle_string();
  if (t.sigma && t.eta)
    body += "⊗";
  if (t.eta)
    body += "w^" + t.eta->to_cycle_string();
  return body;
}

std::string pretty_certificate(const RelationCertificate& c)
{
  std::string out = std::string(to_string(c.kind)) + " (" + to_string(c.construction) + ", " +
                    (c.verified ? "verified" : "NOT verified") + "): ";
  if (c.terms.empty())
    out += "0";
  for (std::size_t i = 0; i < c.terms.size(); ++i)
    out += signed_term(c.terms[i].coef, pretty_term(c.terms[i]), i == 0);
  out += " = 0";
  for (const auto& d : c.dropped)
    out += "\n  dropped " + pretty_term(d) + ": symmetrized image is zero";
  return out;
}

std::string pretty_level(const KernelLevelReport& level)
{
  return level.level + ": kernel dim " + std::to_string(level.kernel_dim) + ", " +
         (level.spanned() ? "spanned" : "not spanned") + ", deficit " + std::to_string(level.deficit.size());
}

// ---- generators ----

struct GeneratorsArgs {
  int n = 0, k = 0, r = 0;
  bool distinct = false;
  bool symmetrized = false;
  bool polynomials = false;
  std::size_t limit = 100'000;
};

int run_generators(const GeneratorsArgs& a, const Options& opt)
{
  require_gate(a.n, a.k, a.r);
  std::vector<GeneratorSpec> items;
  if (a.distinct || a.symmetrized) {
    const Integer count = count_distinct(a.n, a.k, a.r);
    if (count > Integer(static_cast<unsigned long>(a.limit)))
      throw SizeError(count.get_str() + " distinct generators exceed --limit " + std::to_string(a.limit));
    for (const auto& form : enumerate_distinct(a.n, a.k, a.r).classes)
      items.push_back({representative(form), form.sign});
  } else {
    if (static_cast<long double>(factorial(2 * a.r)) * static_cast<long double>(factorial(a.r)) >
        static_cast<long double>(a.limit))
      throw SizeError("raw generator list exceeds --limit " + std::to_string(a.limit));
    for_each_permutation(2 * a.r, [&](const Permutation& sigma) {
      for_each_permutation(a.r, [&](const Permutation& eta) {
        items.push_back({GeneratorId(a.n, a.k, a.r, sigma, eta), 1});
      });
    });
  }

  std::vector<SparsePolynomial> polys;
  if (a.polynomials || a.symmetrized) {
    std::vector<GeneratorId> ids;
    for (const auto& item : items)
      ids.push_back(item.id);
    polys = evaluate_batch(ids);
  }

  json kept = json::array(), dropped = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& id = items[i].id;
    json entry = (a.distinct || a.symmetrized) ? to_json(canonicalize(id)) : to_json(id);
    std::string label = "v_" + id.sigma.to_cycle_string() + "⊗w^" + id.eta.to_cycle_string();
    if (!polys.empty()) {
      if (a.symmetrized && polys[i].is_zero()) {
        entry["reason"] = "symmetrized image is zero";
        dropped.push_back(entry);
        text << "dropped " << label << ": symmetrized image is zero\n";
        continue;
      }
      if (a.polynomials)
        entry["polynomial"] = to_json(polys[i]);
    }
    kept.push_back(entry);
    text << label;
    if (a.polynomials)
      text << " : " << to_pretty(polys[i]);
    text << "\n";
  }

  if (opt.pretty) {
    std::cout << text.str() << kept.size() << " generators\n";
    return kOk;
  }
  json out = {{"n", a.n}, {"k", a.k}, {"r", a.r}, {"count", kept.size()}, {"generators", kept}};
  if (a.symmetrized)
    out["dropped"] = dropped;
  std::cout << dump(out) << "\n";
  return kOk;
}

// ---- evaluate ----

int run_evaluate(const GeneratorArgs& g, const std::string& form_file, const Options& opt)
{
  const auto spec = g.resolve();
  if (!form_file.empty()) {
    const auto form = form_from_json(read_json_file(form_file));
    const Rational value = spec.sign * evaluate_at(spec.id, form);
    if (opt.pretty)
      std::cout << to_string(value) << "\n";
    else
      std::cout << dump(json{{"value", rational_to_json(value)}}) << "\n";
    return kOk;
  }
  SparsePolynomial p = evaluate_polynomial(spec.id);
  if (spec.sign < 0)
    p = -p;
  if (opt.pretty)
    std::cout << to_pretty(p) << "\n";
  else
    std::cout << dump(to_json(p)) << "\n";
  return kOk;
}

// ---- relations ----

struct RelationsArgs {
  int n = 0, k = 0, r = 0;
  std::string type = "B";
  std::string base;
  std::string slots;
  std::string partner;
  bool symmetrize = false;
  bool verify = false;
  bool span_check = false;
  std::string check_file;
  std::size_t budget = 20'000;
  std::size_t limit = 100'000;
};

int run_span_check(const RelationsArgs& a, const Options& opt)
{
  const auto report = kernel_span_check(a.n, a.k, a.r, a.budget);
  if (opt.pretty) {
    if (report.classes)
      std::cout << pretty_level(*report.classes) << "\n";
    if (report.raw)
      std::cout << pretty_level(*report.raw) << "\n";
    if (report.truncated)
      std::cout << "truncated: " << report.truncation_reason << "\n";
  } else {
    std::cout << dump(to_json(report)) << "\n";
  }
  if (report.truncated) {
    std::cerr << "budget exceeded: " << report.truncation_reason << "\n";
    return kBudget;
  }
  return report.spanned() ? kOk : kCheckFailed;
}

int run_check_file(const RelationsArgs& a, const Options& opt)
{
  const json doc = read_json_file(a.check_file);
  std::vector<RelationCertificate> certs;
  if (doc.is_array())
    for (const auto& c : doc)
      certs.push_back(certificate_from_json(c));
  else
    certs.push_back(certificate_from_json(doc));
  const auto ok = verify_all(certs);
  json out = json::array();
  bool all = true;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    certs[i].verified = ok[i];
    all = all && ok[i];
    if (opt.pretty)
      std::cout << pretty_certificate(certs[i]) << "\n";
    out.push_back(to_json(certs[i]));
  }
  if (!opt.pretty)
    std::cout << dump(out) << "\n";
  return all ? kOk : kCheckFailed;
}

int run_relations(const RelationsArgs& a, const Options& opt)
{
  if (!a.check_file.empty())
    return run_check_file(a, opt);
  require_gate(a.n, a.k, a.r);
  if (a.span_check)
    return run_span_check(a, opt);

  std::vector<RelationCertificate> certs;
  if (a.type == "trivial") {
    certs = trivial_relations(a.n, a.k, a.r, a.limit);
  } else if (a.type == "A" || a.type == "B") {
    const bool v_side = a.type == "A";
    const int block = v_side ? a.n : a.k;
    const int degree = v_side ? 2 * a.r : a.r;
    const Permutation base = a.base.empty() ? Permutation::identity(degree) : Permutation::from_cycles(a.base, degree);
    std::vector<int> slots;
    if (a.slots.empty())
      for (int s = 1; s <= block + 1; ++s)
        slots.push_back(s);
    else
      slots = parse_slots(a.slots);
    const ShuffleSpec spec(base, slots);
    RelationCertificate c = v_side ? typeA_relation(a.n, a.r, spec) : typeB_relation(a.k, a.r, spec);
    if (!a.partner.empty() || a.symmetrize) {
      const std::string partner = a.partner.empty() ? "(1)" : a.partner;
      if (v_side)
        c = combined_relation(a.n, a.k, c, Permutation::from_cycles(partner, a.r));
      else
        c = combined_relation(a.n, a.k, Permutation::from_cycles(partner, 2 * a.r), c);
    }
    if (a.symmetrize)
      c = symmetrized_relation(c);
    certs.push_back(std::move(c));
  } else {
    throw UsageError("--type must be A, B or trivial");
  }

  bool all = true;
  if (a.verify) {
    const auto ok = verify_all(certs);
    for (std::size_t i = 0; i < certs.size(); ++i) {
      certs[i].verified = ok[i];
      all = all && ok[i];
    }
  }
  if (opt.pretty) {
    for (const auto& c : certs)
      std::cout << pretty_certificate(c) << "\n";
  } else {
    json out = json::array();
    for (const auto& c : certs)
      out.push_back(to_json(c));
    std::cout << dump(out) << "\n";
  }
  return all ? kOk : kCheckFailed;
}

// ---- pencil ----

int run_pencil(const std::string& form_file, bool want_discriminant, bool compare, const Options& opt)
{
  std::optional<BilinearForm> form;
  if (!form_file.empty()) {
    form = form_from_json(read_json_file(form_file));
    if (form->n() != 2 || form->k() != 2)
      throw DimensionError("the pencil needs n = 2 and k = 2");
  }
  const BinaryQuadratic q = form ? pencil_determinant(*form) : pencil_determinant(2, 2);
  SparsePolynomial disc = discriminant(q);

  std::optional<bool> pass;
  if (compare) {
    const GeneratorId g(2, 2, 4, Permutation::from_cycles("(23)(67)", 8), Permutation::from_cycles("(23)", 4));
    SparsePolynomial expected = Rational(-1, 2) * evaluate_polynomial(g);
    if (form) {
      const auto value = expected.evaluate(form->values());
      expected = SparsePolynomial::constant(expected.variables(), value);
    }
    pass = poly_equal(disc, expected);
  }
  const std::string comparison = pass ? (std::string(*pass ? "pass" : "fail") +
                                         ": discriminant = (-1/2)·f_{(23)(67)}^{(23)}")
                                      : "";
  if (opt.pretty) {
    if (want_discriminant || compare) {
      std::cout << to_pretty(disc) << "\n";
    } else {
      std::cout << "x^2: " << to_pretty(q.A) << "\n";
      std::cout << "xy: " << to_pretty(q.Bc) << "\n";
      std::cout << "y^2: " << to_pretty(q.C) << "\n";
    }
    if (pass)
      std::cout << comparison << "\n";
  } else {
    json out;
    if (want_discriminant || compare)
      out["discriminant"] = to_json(disc);
    else
      out = {{"x2", to_json(q.A)}, {"xy", to_json(q.Bc)}, {"y2", to_json(q.C)}};
    if (pass) {
      out["comparison"] = comparison;
      out["pass"] = *pass;
    }
    std::cout << dump(out) << "\n";
  }
  return pass.value_or(true) ? kOk : kCheckFailed;
}

// ---- weight-check ----

struct WeightArgs {
  std::string form_file, a_file, p_file;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

int run_weight_check(const GeneratorArgs& g, const WeightArgs& w, const Options& opt)
{
  if (w.samples > 0) {
    if (g.n < 1 || g.k < 1 || g.r < 1)
      throw UsageError("random sampling needs -n, -k and -r");
    require_gate(g.n, g.k, g.r);
    Rng rng(w.seed);
    std::size_t passed = 0;
    for (std::size_t i = 0; i < w.samples; ++i) {
      const auto id = random_generator(g.n, g.k, g.r, rng);
      const auto form = random_form(g.n, g.k, rng);
      const auto a = random_invertible(static_cast<std::size_t>(g.n), rng);
      const auto p = random_invertible(static_cast<std::size_t>(g.k), rng);
      passed += weight_check(id, form, a, p).pass ? 1 : 0;
    }
    if (opt.pretty)
      std::cout << passed << "/" << w.samples << " samples pass\n";
    else
      std::cout << dump(json{{"samples", w.samples}, {"passed", passed}, {"seed", w.seed}}) << "\n";
    return passed == w.samples ? kOk : kCheckFailed;
  }
  if (w.form_file.empty() || w.a_file.empty() || w.p_file.empty())
    throw UsageError("give --form, --a and --p, or --samples");
  const auto spec = g.resolve();
  const auto form = form_from_json(read_json_file(w.form_file));
  const auto a = matrix_from_json(read_json_file(w.a_file));
  const auto p = matrix_from_json(read_json_file(w.p_file));
  const auto result = weight_check(spec.id, form, a, p);
  if (opt.pretty)
    std::cout << (result.pass ? "pass" : "fail") << ": f(B') = " << to_string(result.transformed_value)
              << ", weight " << to_string(result.weight) << " · f(B) = " << to_string(result.predicted_value)
              << "\n";
  else
    std::cout << dump(to_json(result)) << "\n";
  return result.pass ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Invariants of vector-valued bilinear forms"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--pretty", opt.pretty, "human-readable output");
  app.add_option("--threads", opt.threads, "worker threads (default: BILINV_THREADS or all cores)");

  GeneratorsArgs gen;
  auto* generators = app.add_subcommand("generators", "list generators of degree r");
  generators->add_option("n", gen.n)->required();
  generators->add_option("k", gen.k)->required();
  generators->add_option("r", gen.r)->required();
  generators->add_flag("--distinct", gen.distinct, "one generator per block class");
  generators->add_flag("--symmetrized", gen.symmetrized, "distinct classes, dropping those with zero polynomial");
  generators->add_flag("--polynomials", gen.polynomials, "attach each generator's polynomial");
  generators->add_option("--limit", gen.limit, "maximum number of generators");

  GeneratorArgs eval_gen;
  std::string eval_form;
  auto* evaluate = app.add_subcommand("evaluate", "polynomial of a generator, or its value at a form");
  eval_gen.attach(evaluate);
  evaluate->add_option("--form", eval_form, "form JSON file; omit for the symbolic polynomial");

  RelationsArgs rel;
  auto* relations = app.add_subcommand("relations", "emit and verify relations among generators");
  relations->add_option("n", rel.n);
  relations->add_option("k", rel.k);
  relations->add_option("r", rel.r);
  relations->add_option("--type", rel.type, "A, B or trivial");
  relations->add_option("--base", rel.base, "base permutation (default identity)");
  relations->add_option("--slots", rel.slots, "comma-separated slots (default 1..m+1)");
  relations->add_option("--with", rel.partner, "generator of the other side to tensor with");
  relations->add_flag("--symmetrize", rel.symmetrize, "apply the symmetrizer to the combined relation");
  relations->add_flag("--verify", rel.verify, "re-verify every certificate");
  relations->add_flag("--span-check", rel.span_check, "compare relation span with the generator kernel");
  relations->add_option("--check", rel.check_file, "verify certificates read from a JSON file");
  relations->add_option("--budget", rel.budget, "column budget for --span-check");
  relations->add_option("--limit", rel.limit, "maximum number of trivial relations");

  std::string pencil_form;
  bool want_disc = false, compare = false;
  auto* pencil = app.add_subcommand("pencil", "det(x B1 + y B2) for n = k = 2");
  pencil->add_option("--form", pencil_form, "form JSON file; omit for symbolic entries");
  pencil->add_flag("--discriminant", want_disc);
  pencil->add_flag("--compare-invariant", compare, "check the discriminant against the degree-4 invariant");

  GeneratorArgs weight_gen;
  WeightArgs weight;
  auto* weight_cmd = app.add_subcommand("weight-check", "check relative invariance under GL(V) x GL(W)");
  weight_gen.attach(weight_cmd);
  weight_cmd->add_option("--form", weight.form_file);
  weight_cmd->add_option("--a", weight.a_file, "matrix acting on V");
  weight_cmd->add_option("--p", weight.p_file, "matrix acting on W");
  weight_cmd->add_option("--samples", weight.samples, "random samples instead of files");
  weight_cmd->add_option("--seed", weight.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_thread_count(opt.threads > 0 ? opt.threads : thread_count_from_env());
    if (*generators)
      return run_generators(gen, opt);
    if (*evaluate)
      return run_evaluate(eval_gen, eval_form, opt);
    if (*relations)
      return run_relations(rel, opt);
    if (*pencil)
      return run_pencil(pencil_form, want_disc, compare, opt);
    if (*weight_cmd)
      return run_weight_check(weight_gen, weight, opt);
  } catch (const DivisibilityError&) {
    std::cerr << kNoInvariantsMessage << "\n";
    return kNoInvariants;
  } catch (const FormatError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const DimensionError& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kDimension;
  } catch (const SizeError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
