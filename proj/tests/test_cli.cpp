#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "bilinv/json_io.hpp"
#include "test_util.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args)
{
  const std::string cmd = std::string(BILINV_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe))
    out.append(buffer, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content)
{
  const auto path = std::filesystem::temp_directory_path() / ("bilinv_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("generators")
{
  auto small = run("--pretty generators 2 1 1 --distinct --polynomials");
  CHECK(small.code == 0);
  CHECK(small.out.find("b_{12}^1 - b_{21}^1") != std::string::npos);
  CHECK(small.out.find("1 generators") != std::string::npos);

  auto distinct = run("generators 2 2 4 --distinct");
  CHECK(distinct.code == 0);
  auto doc = bilinv::parse_json(distinct.out);
  CHECK(doc["count"] == 315);
  CHECK(doc["generators"].size() == 315);

  auto gate = run("generators 3 2 2");
  CHECK(gate.code == 2);

  auto sym = run("generators 2 2 2 --symmetrized");
  CHECK(sym.code == 0);
  auto sdoc = bilinv::parse_json(sym.out);
  CHECK(sdoc["count"] == 0);
  CHECK(sdoc["dropped"].size() == 3);
  CHECK(sdoc["dropped"][0]["reason"] == "symmetrized image is zero");

  CHECK(run("generators 2 2 4").code == 5);
}

TEST_CASE("evaluate")
{
  auto f = run("--pretty evaluate --sigma '(23)(67)' --eta '(23)' -n 2 -k 2 -r 4");
  CHECK(f.code == 0);
  const auto golden = testutil::read_lines(testutil::golden_path("f_23_67_eta_23.pretty"));
  CHECK(f.out == golden.at(0) + "\n");
  CHECK(run("--pretty evaluate --sigma '(23)(67)' --eta '(1)' -n 2 -k 2 -r 4").out == "0\n");

  const auto gen = temp_file("gen.json", R"j({"sigma":"(1)","eta":"(1)","n":2,"k":1,"r":1})j");
  const auto form = temp_file("form.json", R"j({"n":2,"k":1,"matrices":[[["1","2"],["3","4"]]]})j");
  auto value = run("evaluate --generator " + gen + " --form " + form);
  CHECK(value.code == 0);
  CHECK(bilinv::parse_json(value.out)["value"] == "-1");

  const auto bad = temp_file("bad.json", "{\"n\": 2,");
  CHECK(run("evaluate --generator " + bad).code == 3);
  const auto wide = temp_file("wide.json", R"j({"n":3,"k":1,"matrices":[[["1","0","0"],["0","1","0"],["0","0","1"]]]})j");
  CHECK(run("evaluate --generator " + gen + " --form " + wide).code == 4);
  CHECK(run("evaluate --sigma '(1)'").code == 1);
}

TEST_CASE("relations")
{
  auto sigma = run("relations 2 2 4");
  CHECK(sigma.code == 0);
  auto doc = bilinv::parse_json(sigma.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["kind"] == "typeB");
  CHECK(doc[0]["verified"] == true);
  CHECK(doc[0]["terms"][0]["eta"] == "(1)");
  CHECK(doc[0]["terms"][1]["eta"] == "(23)");
  CHECK(doc[0]["terms"][2]["eta"] == "(132)");

  const auto certs = temp_file("certs.json", sigma.out);
  CHECK(run("relations --check " + certs).code == 0);
  CHECK(run("relations 2 2 4 --verify").code == 0);

  auto span = run("--pretty relations 2 1 2 --span-check");
  CHECK(span.code == 0);
  CHECK(span.out.find("kernel dim 1, spanned, deficit 0") != std::string::npos);
  auto span2 = run("relations 2 2 2 --span-check");
  CHECK(span2.code == 0);
  CHECK(bilinv::parse_json(span2.out)["classes"]["deficit"].empty());

  auto budget = run("relations 2 2 4 --span-check --budget 10");
  CHECK(budget.code == 5);
  CHECK(bilinv::parse_json(budget.out)["truncated"] == true);
  CHECK(run("relations 3 2 2").code == 2);
}

TEST_CASE("pencil")
{
  auto cmp = run("--pretty pencil --discriminant --compare-invariant");
  CHECK(cmp.code == 0);
  CHECK(cmp.out.find("pass: discriminant = (-1/2)·f_{(23)(67)}^{(23)}") != std::string::npos);

  const auto flat = temp_file("flat.json", R"j({"n":2,"k":2,"matrices":[[["1","0"],["0","1"]],[["0","0"],["0","0"]]]})j");
  CHECK(run("--pretty pencil --discriminant --form " + flat).out == "0\n");
  CHECK(run("pencil --discriminant --compare-invariant --form " + flat).code == 0);
  const auto wide = temp_file("wide2.json", R"j({"n":3,"k":1,"matrices":[[["1","0","0"],["0","1","0"],["0","0","1"]]]})j");
  CHECK(run("pencil --form " + wide).code == 4);
}

TEST_CASE("weight-check")
{
  CHECK(run("weight-check -n 2 -k 2 -r 4 --samples 5 --seed 3").code == 0);
  const auto gen = temp_file("wgen.json", R"j({"sigma":"(23)(67)","eta":"(23)","n":2,"k":2,"r":4})j");
  const auto form = temp_file("wform.json", R"j({"n":2,"k":2,"matrices":[[["1","2"],["0","3"]],[["-1","1"],["2","5"]]]})j");
  const auto a = temp_file("wa.json", R"j([["2","1"],["1","1"]])j");
  const auto p = temp_file("wp.json", R"j([["1","3"],["0","2"]])j");
  auto result = run("weight-check --generator " + gen + " --form " + form + " --a " + a + " --p " + p);
  CHECK(result.code == 0);
  CHECK(bilinv::parse_json(result.out)["pass"] == true);
}

TEST_CASE("output does not depend on the thread count")
{
  const auto one = run("--threads 1 generators 2 2 2 --distinct --polynomials");
  const auto many = run("--threads 4 generators 2 2 2 --distinct --polynomials");
  CHECK(one.out == many.out);
  const auto env = run("relations 2 1 2 --span-check");
  CHECK(env.out == run("--threads 3 relations 2 1 2 --span-check").out);
}

}
