#include "bilinv/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bilinv {

namespace {

Integer parse_integer(std::string_view text)
{
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size())
    throw std::invalid_argument("empty integer literal");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s[0] == '+')
    s.erase(0, 1);
  return Integer(s, 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_integer(text));
  return parse_rational(text.substr(0, slash), text.substr(slash + 1));
}

Rational parse_rational(std::string_view num, std::string_view den)
{
  Integer d = parse_integer(den);
  if (d == 0)
    throw std::invalid_argument("zero denominator");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q)
{
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow(const Rational& base, long exponent)
{
  Rational b = base;
  if (exponent < 0) {
    if (is_zero(b))
      throw std::domain_error("zero to a negative power");
    b = 1 / b;
    exponent = -exponent;
  }
  Rational result = 1;
  while (exponent > 0) {
    if (exponent & 1)
      result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

} // namespace bilinv
