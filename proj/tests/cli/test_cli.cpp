#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "chtrace/algebra_json.hpp"
#include "chtrace/trace_algebra.hpp"
#include "cli.hpp"
#include "doctest.h"

using namespace chtrace;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "chtrace");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const json& j) {
  const auto dir = std::filesystem::temp_directory_path() / "chtrace_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << j.dump();
  return path.string();
}

// Integer "key=value" pairs of a text report.
std::map<std::string, long> text_ints(const std::string& text) {
  std::map<std::string, long> m;
  const std::regex re(R"(([A-Za-z_][A-Za-z0-9_]*)=(-?\d+)\b)");
  for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it)
    m.emplace((*it)[1].str(), std::stol((*it)[2].str()));
  return m;
}

struct EnvGuard {
  std::string name;
  EnvGuard(const char* n, const char* v) : name(n) { setenv(n, v, 1); }
  ~EnvGuard() { unsetenv(name.c_str()); }
};

}  // namespace

TEST_CASE("predict text and json agree") {
  const auto t = run({"predict", "--type", "A2", "--ell", "5"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("degree_U=125") != std::string::npos);
  CHECK(t.out.find("tensor_mult=5") != std::string::npos);
  const auto j = run({"predict", "--type", "A2", "--ell", "5", "--json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.at("schema") == "chtrace/1");
  const auto ints = text_ints(t.out);
  for (const auto& [key, row] : doc.at("predictions").items())
    CHECK(std::to_string(ints.at(key)) == row.at("value").get<std::string>());
  CHECK(doc.at("predictions").size() == 10);
}

TEST_CASE("exit codes for bad input") {
  const auto g = run({"predict", "--type", "G2", "--ell", "9"});
  CHECK(g.code == 1);
  CHECK(g.err.find("coprime to 3") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"predict", "--ell", "5"}).code == 2);
  CHECK(run({"sl2", "cg", "--ell", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"sl2", "cg", "--ell", "9", "--trials", "0"}).code == 1);
  CHECK(run({"sl2", "build", "--ell", "3", "--chi", "0,1,0"}).code == 1);
}

TEST_CASE("sl2 cg passes and is reproducible") {
  const auto a = run({"sl2", "cg", "--ell", "3", "--trials", "5", "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(text_ints(a.out).at("pass") == 5);
  CHECK(run({"sl2", "cg", "--ell", "3", "--trials", "5", "--seed", "1"}).out == a.out);
  CHECK(run({"sl2", "cg", "--ell", "3", "--trials", "5", "--seed", "1", "--jobs", "3"}).out == a.out);
  const auto j = run({"sl2", "cg", "--ell", "3", "--trials", "5", "--seed", "1", "--json"});
  REQUIRE(j.code == 0);
  const json doc = json::parse(j.out);
  CHECK(doc.at("schema") == "chtrace/1");
  CHECK(doc.at("pass") == 5);
  const auto ints = text_ints(a.out);
  CHECK(doc.at("expected").at("count") == ints.at("count"));
  CHECK(doc.at("expected").at("irrep_dim") == ints.at("irrep_dim"));
  CHECK(doc.at("trials").size() == 5);
  CHECK(doc.at("trials")[0].at("report").at("summands").size() == 3);
}

TEST_CASE("sl2 branch and rescale") {
  CHECK(run({"sl2", "branch", "--ell", "5", "--trials", "3"}).code == 0);
  const auto r = run({"sl2", "rescale", "--ell", "3", "--r", "3", "--json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("trials")[0].at("report").at("summands")[0].at("multiplicity") == 3);
  CHECK(run({"sl2", "rescale", "--r", "5"}).code == 1);
}

TEST_CASE("inconclusive verdicts map to exit 3 unless allowed") {
  EnvGuard g("CHTRACE_TOL_GRAM", "2");  // no trace form passes, so every trial is flagged non-generic
  const auto r = run({"sl2", "cg", "--ell", "3", "--trials", "2"});
  CHECK(r.code == 3);
  CHECK(r.out.find("inconclusive=2") != std::string::npos);
  CHECK(run({"sl2", "cg", "--ell", "3", "--trials", "2", "--allow-inconclusive"}).code == 0);
}

TEST_CASE("tolerance overrides are validated") {
  EnvGuard g("CHTRACE_TOL_CLUSTER", "-1");
  CHECK(run({"sl2", "cg", "--ell", "3", "--trials", "1"}).code == 1);
}

TEST_CASE("sl2 build emits matrices") {
  const auto r = run({"sl2", "build", "--ell", "3", "--chi", "1,1,1", "--branch", "2", "--json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("E").size() == 3);
  CHECK(doc.at("branch") == 2);
  CHECK(doc.at("residuals").at("ef").get<double>() < 1e-10);
  CHECK(run({"sl2", "build", "--ell", "5", "--highest-weight", "2"}).code == 0);
}

TEST_CASE("algebra subcommands") {
  const auto m2 = write_temp("m2.json", algebra_to_json(matrix_algebra(2)));
  const auto doubled = write_temp("m2x2.json", algebra_to_json(rescale_trace(matrix_algebra(2), 2)));
  const auto tp = write_temp("tp.json", algebra_to_json(truncated_polynomial(3)));
  const auto sum = write_temp("sum.json", algebra_to_json(direct_sum(matrix_algebra(1), matrix_algebra(2))));

  CHECK(run({"algebra", "check", m2}).code == 0);
  const auto rad = run({"algebra", "radical", tp, "--json"});
  REQUIRE(rad.code == 0);
  CHECK(json::parse(rad.out).at("radical_dim") == 2);
  CHECK(text_ints(run({"algebra", "radical", m2}).out).at("radical_dim") == 0);

  const auto blocks = run({"algebra", "blocks", sum});
  REQUIRE(blocks.code == 0);
  CHECK(blocks.out.find("{(1,1),(2,1)}") != std::string::npos);
  CHECK(run({"algebra", "blocks", doubled}).out.find("{(2,2)}") != std::string::npos);

  const auto red = run({"algebra", "reduce", doubled, "--json"});
  REQUIRE(red.code == 0);
  CHECK(json::parse(red.out).at("multiple") == 2);
  CHECK(run({"algebra", "reduce", tp}).code == 1);

  CHECK(run({"algebra", "check", "/nonexistent/file.json"}).code == 1);
  const auto bad = write_temp("bad.json", json{{"dim", 2}});
  CHECK(run({"algebra", "check", bad}).code == 1);
}

TEST_CASE("matinv is exact") {
  const auto r = run({"matinv", "--matrix", "[[2,1],[1,1]]", "--json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("n") == 2);
  const auto t = run({"matinv", "--matrix", "[[1,2],[3,4]]"});
  CHECK(t.out == "[-2, 1]\n[3/2, -1/2]\n");
  CHECK(run({"matinv", "--matrix", "[[1,1],[1,1]]"}).code == 1);
  CHECK(run({"matinv", "--matrix", "[[1,2,3]]"}).code == 1);
  CHECK(run({"matinv"}).code == 1);
}

TEST_CASE("chcheck") {
  const auto ok = run({"chcheck", "--n", "2", "--size", "2", "--trials", "20", "--seed", "7"});
  CHECK(ok.code == 0);
  CHECK(text_ints(ok.out).at("vanished") == 20);
  const auto over = run({"chcheck", "--n", "2", "--size", "3", "--trials", "5", "--json"});
  CHECK(over.code == 0);
  CHECK(json::parse(over.out).at("vanished") == 0);
  CHECK(run({"chcheck", "--n", "9"}).code == 1);
}
