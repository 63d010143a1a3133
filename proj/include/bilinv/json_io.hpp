#pragma once

#include <string>

#include <json.hpp>

#include "bilinv/invariants.hpp"
#include "bilinv/relations.hpp"

namespace bilinv {

using json = nlohmann::json;

/// Parses text into a document; throws FormatError on syntax errors.
json parse_json(const std::string& text);
/// Reads and parses a file; throws FormatError when it cannot be read or parsed.
json read_json_file(const std::string& path);
/// Two-space indented, keys sorted.
std::string dump(const json& doc);

json rational_to_json(const Rational& q);
/// Accepts "p", "p/q" or an integer.
Rational rational_from_json(const json& v);

json to_json(const SparseTensor& t);
SparseTensor tensor_from_json(const json& doc);

json to_json(const BilinearForm& form);
BilinearForm form_from_json(const json& doc);

json to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const json& doc);

json to_json(const GeneratorId& g);
json to_json(const BlockForm& form);

/// A generator read from either the permutation or the block layout.
struct GeneratorSpec {
  GeneratorId id;
  int sign = 1; ///< tensor(spec) = sign * tensor(id)
};
/// Block layouts need no n, k, r: they are read off the blocks.
GeneratorSpec generator_from_json(const json& doc);

json to_json(const SparsePolynomial& p);
/// Throws DimensionError when the variable names differ from `vars`.
SparsePolynomial polynomial_from_json(const json& doc, const VariableSetPtr& vars);

json to_json(const RelationCertificate& c);
RelationCertificate certificate_from_json(const json& doc);

json to_json(const KernelLevelReport& level);
json to_json(const KernelSpanReport& report);

json to_json(const WeightCheckResult& result);

} // namespace bilinv
