#include <cstdio>
#include <fstream>
#include <sstream>

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include "apfree/cli.hpp"

using apfree::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const std::string path = "apfree_cli_test_" + name + ".txt";
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(call({"check", "--construction", "P", "--through-block", "3", "--k", "5"}).code == 0);
  const auto bad = call({"check", "--file", temp_file("ap", "1\n5\n2\n3\n"), "--k", "3"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("values 1 2 3") != std::string::npos);
  CHECK(call({"check", "--construction", "R", "--n", "4", "--groups", "2", "--k", "4", "--diff-not-divisible-by",
              "4"})
            .code == 0);
  CHECK(call({"check", "--construction", "R", "--n", "4", "--groups", "2", "--k", "4"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"check", "--k", "5"}).code == 2);
  CHECK(call({"check", "--construction", "nope"}).code == 2);
  CHECK(call({"check", "--construction", "R", "--n", "3"}).code == 2);
  CHECK(call({"check", "--construction", "K", "--diff-divisible-by", "2", "--diff-not-divisible-by", "3"}).code == 2);
  CHECK(call({"count", "--n", "4", "--k", "2"}).code == 2);
  CHECK(call({"check-mod", "--file", "does-not-exist.txt"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("count, enumerate, check-mod") {
  const auto c = call({"count", "--n", "4", "--k", "3"});
  CHECK(c.code == 0);
  CHECK(c.out == "8\n");
  CHECK(call({"count", "--n", "12", "--k", "3"}).code == 3);
  CHECK(call({"count", "--structured-k", "3"}).out.find("enumerated  128") != std::string::npos);

  const auto e = call({"enumerate", "--structured-k", "2"});
  CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 8);

  const auto row = temp_file("prime7", "# row for 7\n7\n4\n2\n6\n3\n5\n1\n");
  CHECK(call({"check-mod", "--file", row, "--n", "7", "--k", "4"}).code == 0);
  const auto five = temp_file("five", "4\n2\n5\n1\n3\n");
  const auto r = call({"--format", "json", "check-mod", "--file", five, "--k", "3"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["outcome"] == "witness_found");
  CHECK(j["witnesses"][0]["modulus"] == 5);
}

TEST_CASE("search and permissible") {
  CHECK(call({"search", "--n", "7", "--k", "4"}).code == 0);
  CHECK(call({"search", "--n", "6", "--k", "3"}).code == 1);
  CHECK(call({"search", "--n", "13", "--k", "4", "--budget", "5"}).code == 3);
  CHECK(call({"permissible", "--n", "12", "--k", "4"}).code == 0);
  CHECK(call({"permissible", "--n", "6", "--k", "3"}).code == 1);
  CHECK(call({"permissible", "--n", "29", "--k", "4", "--budget", "5"}).code == 3);
}

TEST_CASE("generate, density, partition-check") {
  const auto g = call({"generate", "--construction", "K", "--i-max", "2"});
  CHECK(g.out == "-1\n2\n3\n-6\n-4\n-5\n");
  const auto gj = call({"generate", "--construction", "K", "--i-max", "2", "--format", "json"});
  std::istringstream lines(gj.out);
  std::string header;
  std::getline(lines, header);
  CHECK(nlohmann::json::parse(header)["length"] == 6);

  const auto d = call({"--format", "json", "density", "--construction", "R-prime", "--boundaries", "4", "3^12"});
  REQUIRE(d.code == 0);
  const auto dj = nlohmann::json::parse(d.out);
  CHECK(dj["side"] == "positive_half");
  CHECK(dj["points"][0]["count"] == "4");
  CHECK(dj["points"][1]["N"] == "531441");
  CHECK(call({"density", "--construction", "K", "--family", "liminf", "--last", "20"}).code == 0);
  CHECK(call({"density", "--construction", "K", "--boundaries", "10", "5"}).code == 2);

  const auto p = call({"partition-check", "--i-max", "4"});
  CHECK(p.code == 0);
  CHECK(p.out == "exact cover of [-31, 31]\n");
}

TEST_CASE("reports are deterministic apart from timings") {
  const std::vector<std::string> args{"--format", "json", "check", "--construction", "T", "--i-max", "2", "--k", "3"};
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j.erase("timings");
    return j.dump();
  };
  const auto a = call(args);
  const auto b = call(args);
  CHECK(a.code == 1);
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("verify-all runs selected criteria") {
  const auto r = call({"verify-all", "--only", "8", "9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS   8") != std::string::npos);
  CHECK(r.out.find("PASS   9") != std::string::npos);
}
