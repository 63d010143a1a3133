#include <doctest.h>

#include "bilinv/errors.hpp"
#include "bilinv/json_io.hpp"
#include "bilinv/sampling.hpp"
#include "test_util.hpp"

using namespace bilinv;
using testutil::cyc;

TEST_SUITE("json") {

TEST_CASE("tensor round trip")
{
  const auto t = Rational(1, 3) * build_v(2, 2, cyc("(23)", 4));
  const auto doc = to_json(t);
  CHECK(doc["profile"][0]["kind"] == "V");
  CHECK(doc["entries"][0]["den"] == "3");
  CHECK(tensor_from_json(parse_json(dump(doc))) == t);
  const auto w = build_w(2, 4, cyc("(132)", 4));
  CHECK(tensor_from_json(to_json(w)) == w);
}

TEST_CASE("form round trip accepts strings and integers")
{
  const auto form = form_from_json(parse_json(R"j({"n":2,"k":1,"matrices":[[["1/2",2],["-3","4"]]]})j"));
  CHECK(form.at(1, 1, 1) == Rational(1, 2));
  CHECK(form.at(1, 2, 1) == -3);
  CHECK(form_from_json(to_json(form)) == form);
  CHECK_THROWS_AS(form_from_json(parse_json(R"j({"n":2,"k":1,"matrices":[[["1","2"]]]})j")), DimensionError);
  CHECK_THROWS_AS(form_from_json(parse_json(R"j({"n":2,"matrices":[]})j")), FormatError);
  CHECK_THROWS_AS(form_from_json(parse_json(R"j({"n":2,"k":1,"matrices":[[["x","2"],["3","4"]]]})j")), FormatError);
}

TEST_CASE("malformed text")
{
  CHECK_THROWS_AS(parse_json("{\"n\": 2,"), FormatError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), FormatError);
}

TEST_CASE("generator formats")
{
  const auto g = generator_from_json(parse_json(R"j({"sigma":"(23)(67)","eta":"(23)","n":2,"k":2,"r":4})j"));
  CHECK(g.id.sigma == cyc("(23)(67)", 8));
  CHECK(g.sign == 1);
  CHECK(generator_from_json(to_json(g.id)).id == g.id);

  const auto form = canonicalize(g.id);
  const auto from_blocks = generator_from_json(to_json(form));
  CHECK(Rational(from_blocks.sign) * generator_tensor(from_blocks.id) == generator_tensor(g.id));

  const auto blocks = generator_from_json(
    parse_json(R"j({"v_blocks":[[1,3],[2,4],[5,7],[6,8]],"w_blocks":[[1,3],[2,4]],"sign":-1})j"));
  CHECK(blocks.id.n == 2);
  CHECK(blocks.id.k == 2);
  CHECK(blocks.id.r == 4);
  CHECK(blocks.sign == -1);
  CHECK_THROWS_AS(generator_from_json(parse_json(R"j({"v_blocks":[[1,1]],"w_blocks":[[1]]})j")), FormatError);
  CHECK_THROWS_AS(generator_from_json(parse_json(R"j({"sigma":"(29)","eta":"(1)","n":2,"k":1,"r":2})j")), FormatError);
  CHECK_THROWS_AS(generator_from_json(parse_json(R"j({"sigma":"(1)","eta":"(1)","n":3,"k":2,"r":2})j")),
                  DivisibilityError);
}

TEST_CASE("polynomial round trip")
{
  const auto p = evaluate_polynomial(GeneratorId(2, 2, 4, cyc("(23)(67)", 8), cyc("(23)", 4)));
  const auto doc = to_json(p);
  CHECK(doc["vars"][0] == "b[1][1][1]");
  CHECK(doc["terms"].size() == 12);
  CHECK(poly_equal(polynomial_from_json(parse_json(dump(doc)), form_variables(2, 2)), p));
  CHECK_THROWS_AS(polynomial_from_json(doc, form_variables(2, 1)), DimensionError);
}

TEST_CASE("certificate round trip")
{
  const auto c = typeB_relation(2, 4, ShuffleSpec(Permutation::identity(4), {1, 2, 3}));
  const auto doc = to_json(c);
  CHECK(doc["kind"] == "typeB");
  CHECK(doc["construction"] == "literal");
  CHECK(doc["terms"][1]["coef"] == "-1");
  CHECK(doc["terms"][1]["eta"] == "(23)");
  const auto back = certificate_from_json(parse_json(dump(doc)));
  CHECK(back.terms.size() == 3);
  CHECK(verify(back));

  // The minimal layout without r or side information.
  const auto minimal = certificate_from_json(parse_json(
    R"j({"kind":"typeB","k":2,"terms":[{"coef":"1","eta":"(1)"},{"coef":"-1","eta":"(23)"},{"coef":"1","eta":"(132)"}],"verified":true,"construction":"literal"})j"));
  CHECK(minimal.r == 4);
  CHECK(verify(minimal));

  const auto both = combined_relation(2, 2, cyc("(23)(67)", 8), c);
  CHECK(verify(certificate_from_json(to_json(both))));
  const auto sym = symmetrized_relation(both);
  const auto sym_back = certificate_from_json(to_json(sym));
  CHECK(sym_back.dropped.size() == 1);
  CHECK(verify(sym_back));
  CHECK_THROWS_AS(certificate_from_json(parse_json(R"j({"kind":"typeQ","terms":[]})j")), FormatError);
}

TEST_CASE("dumps are byte-stable with sorted keys")
{
  const auto report = kernel_span_check(2, 1, 2);
  const auto a = dump(to_json(report));
  const auto b = dump(to_json(kernel_span_check(2, 1, 2)));
  CHECK(a == b);
  CHECK(a.find("\"classes\"") < a.find("\"gate\""));
}

}
