#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bilinv/invariants.hpp"
#include "oracles.hpp"

namespace testutil {

inline std::map<oracle::Index, bilinv::Rational> entries(const bilinv::SparseTensor& t)
{
  std::map<oracle::Index, bilinv::Rational> out;
  t.for_each([&](std::span<const int> idx, const bilinv::Rational& c) {
    out.emplace(oracle::Index(idx.begin(), idx.end()), c);
  });
  return out;
}

template <typename T>
std::map<oracle::Index, bilinv::Rational> as_rational(const std::map<oracle::Index, T>& m)
{
  std::map<oracle::Index, bilinv::Rational> out;
  for (const auto& [k, v] : m)
    out.emplace(k, bilinv::Rational(v));
  return out;
}

inline oracle::Poly terms(const bilinv::SparsePolynomial& p)
{
  return oracle::Poly(p.terms().begin(), p.terms().end());
}

/// Tensor from "+1 1 2 1 2" style lines: a signed coefficient then the index.
inline std::map<oracle::Index, bilinv::Rational> parse_tensor_lines(const std::vector<std::string>& lines)
{
  std::map<oracle::Index, bilinv::Rational> out;
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::string coef;
    in >> coef;
    oracle::Index idx;
    int v;
    while (in >> v)
      idx.push_back(v);
    out[idx] += bilinv::parse_rational(coef[0] == '+' ? coef.substr(1) : coef);
  }
  return out;
}

inline std::string golden_path(const std::string& name)
{
  return std::string(GOLDEN_DIR) + "/" + name;
}

inline std::vector<std::string> read_lines(const std::string& path)
{
  std::ifstream in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#')
      out.push_back(line);
  return out;
}

/// Polynomial from lines like "4 b_{11}^1 b_{22}^1 b_{11}^2 b_{22}^2" (single-digit labels).
inline oracle::Poly parse_poly_lines(int n, int k, const std::vector<std::string>& lines)
{
  oracle::Poly out;
  for (const auto& line : lines) {
    std::istringstream in(line);
    std::string coef, factor;
    in >> coef;
    std::vector<unsigned> exps(static_cast<std::size_t>(k * n * n), 0);
    while (in >> factor) {
      // b_{ij}^a
      const int i = factor[3] - '0', j = factor[4] - '0', a = factor[7] - '0';
      ++exps[bilinv::form_variable_index(n, a, i, j)];
    }
    out[exps] += bilinv::parse_rational(coef);
  }
  return out;
}

inline bilinv::Permutation cyc(const char* text, int degree)
{
  return bilinv::Permutation::from_cycles(text, degree);
}

} // namespace testutil
