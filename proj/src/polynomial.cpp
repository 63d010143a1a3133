#include "bilinv/polynomial.hpp"

#include <numeric>

#include "bilinv/errors.hpp"

namespace bilinv {

VariableSetPtr form_variables(int n, int k)
{
  auto vars = std::make_shared<VariableSet>();
  for (int alpha = 1; alpha <= k; ++alpha)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        auto a = std::to_string(alpha), si = std::to_string(i), sj = std::to_string(j);
        vars->names.push_back("b[" + a + "][" + si + "][" + sj + "]");
        bool wide = n > 9;
        vars->pretty.push_back("b_{" + si + (wide ? "," : "") + sj + "}^" + (k > 9 ? "{" + a + "}" : a));
      }
  return vars;
}

VariableSetPtr generic_variables(std::size_t count, const std::string& prefix)
{
  auto vars = std::make_shared<VariableSet>();
  for (std::size_t i = 1; i <= count; ++i) {
    vars->names.push_back(prefix + std::to_string(i));
    vars->pretty.push_back(prefix + std::to_string(i));
  }
  return vars;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const
{
  auto da = std::accumulate(a.begin(), a.end(), 0u);
  auto db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db)
    return da > db;
  return a > b;
}

SparsePolynomial::SparsePolynomial(VariableSetPtr vars)
  : vars_(std::move(vars))
{
}

SparsePolynomial SparsePolynomial::constant(VariableSetPtr vars, const Rational& c)
{
  SparsePolynomial p(vars);
  p.add_term(Monomial(vars->size(), 0), c);
  return p;
}

SparsePolynomial SparsePolynomial::variable(VariableSetPtr vars, std::size_t index)
{
  if (index >= vars->size())
    throw DimensionError("variable index out of range");
  SparsePolynomial p(vars);
  Monomial m(vars->size(), 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

Rational SparsePolynomial::coefficient(const Monomial& m) const
{
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePolynomial::add_term(const Monomial& m, const Rational& c)
{
  if (vars_ == nullptr || m.size() != vars_->size())
    throw DimensionError("monomial length does not match the variable set");
  if (bilinv::is_zero(c))
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (bilinv::is_zero(it->second))
      terms_.erase(it);
  }
}

Rational SparsePolynomial::evaluate(std::span<const Rational> values) const
{
  if (vars_ == nullptr || values.size() != vars_->size())
    throw DimensionError("evaluation point has the wrong number of coordinates");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] != 0)
        term *= bilinv::pow(values[v], static_cast<long>(m[v]));
    total += term;
  }
  return total;
}

void SparsePolynomial::check_same_variables(const SparsePolynomial& other) const
{
  if (vars_ == other.vars_)
    return;
  if (vars_ == nullptr || other.vars_ == nullptr || !(*vars_ == *other.vars_))
    throw DimensionError("polynomials are over different variable sets");
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& other)
{
  check_same_variables(other);
  for (const auto& [m, c] : other.terms_)
    add_term(m, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& other)
{
  check_same_variables(other);
  for (const auto& [m, c] : other.terms_)
    add_term(m, -c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(const SparsePolynomial& other)
{
  check_same_variables(other);
  SparsePolynomial product(vars_);
  Monomial m(vars_->size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) {
      for (std::size_t v = 0; v < m.size(); ++v)
        m[v] = ma[v] + mb[v];
      product.add_term(m, ca * cb);
    }
  terms_ = std::move(product.terms_);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(const Rational& c)
{
  if (bilinv::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, value] : terms_)
    value *= c;
  return *this;
}

SparsePolynomial SparsePolynomial::operator-() const
{
  SparsePolynomial p = *this;
  for (auto& [m, value] : p.terms_)
    value = -value;
  return p;
}

SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
SparsePolynomial operator*(SparsePolynomial a, const SparsePolynomial& b) { return a *= b; }
SparsePolynomial operator*(const Rational& c, SparsePolynomial p) { return p *= c; }

bool poly_equal(const SparsePolynomial& p, const SparsePolynomial& q)
{
  if (p.variables() != q.variables() &&
      (p.variables() == nullptr || q.variables() == nullptr || !(*p.variables() == *q.variables())))
    throw DimensionError("polynomials are over different variable sets");
  return p.terms() == q.terms();
}

namespace {

std::string monomial_text(const VariableSet& vars, const Monomial& m)
{
  std::string out;
  for (std::size_t v = 0; v < m.size(); ++v)
    for (unsigned e = 0; e < m[v]; ++e) {
      if (!out.empty())
        out.push_back(' ');
      out += vars.pretty[v];
    }
  return out;
}

std::string term_text(const VariableSet& vars, const Monomial& m, const Rational& c, bool with_sign)
{
  std::string mono = monomial_text(vars, m);
  Rational magnitude = abs(c);
  std::string coef = (magnitude == 1 && !mono.empty()) ? "" : to_string(magnitude);
  std::string sign = (sgn(c) < 0) ? "-" : "";
  return (with_sign ? sign : "") + coef + mono;
}

} // namespace

std::vector<std::string> pretty_terms(const SparsePolynomial& p)
{
  std::vector<std::string> out;
  for (const auto& [m, c] : p.terms())
    out.push_back(term_text(*p.variables(), m, c, true));
  return out;
}

std::string to_pretty(const SparsePolynomial& p)
{
  if (p.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first)
      out += term_text(*p.variables(), m, c, true);
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term_text(*p.variables(), m, c, false);
    first = false;
  }
  return out;
}

namespace {

// Entry accessor returning b^alpha_{ij} as a polynomial.
template <typename Entry>
BinaryQuadratic pencil_from_entries(Entry entry)
{
  // det [[x p11 + y q11, x p12 + y q12], [x p21 + y q21, x p22 + y q22]]
  auto p = [&](int i, int j) { return entry(1, i, j); };
  auto q = [&](int i, int j) { return entry(2, i, j); };
  BinaryQuadratic out;
  out.A = p(1, 1) * p(2, 2) - p(1, 2) * p(2, 1);
  out.Bc = p(1, 1) * q(2, 2) + p(2, 2) * q(1, 1) - p(1, 2) * q(2, 1) - p(2, 1) * q(1, 2);
  out.C = q(1, 1) * q(2, 2) - q(1, 2) * q(2, 1);
  return out;
}

} // namespace

BinaryQuadratic pencil_determinant(int n, int k)
{
  if (n != 2 || k != 2)
    throw DimensionError("the determinant pencil needs n = k = 2");
  auto vars = form_variables(2, 2);
  return pencil_from_entries([&](int alpha, int i, int j) {
    return SparsePolynomial::variable(vars, form_variable_index(2, alpha, i, j));
  });
}

BinaryQuadratic pencil_determinant(const BilinearForm& form)
{
  if (form.n() != 2 || form.k() != 2)
    throw DimensionError("the determinant pencil needs n = k = 2");
  auto vars = form_variables(2, 2);
  return pencil_from_entries([&](int alpha, int i, int j) {
    return SparsePolynomial::constant(vars, form.at(alpha, i, j));
  });
}

SparsePolynomial discriminant(const BinaryQuadratic& q)
{
  return q.Bc * q.Bc - Rational(4) * (q.A * q.C);
}

} // namespace bilinv
