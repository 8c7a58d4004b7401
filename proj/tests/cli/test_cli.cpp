#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <braidgrowth/cli.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "braidgrowth");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = braidgrowth::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("braidgrowth_cli_" + name);
}

}  // namespace

TEST_CASE("growth") {
  auto r = run({"growth", "--n", "4", "--terms", "2", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "l,a\n0,1\n1,23\n2,187\n");
  CHECK(run({"growth", "--n", "2", "--terms", "3"}).out == "1\n1\n1\n1\n");
  CHECK(run({"growth", "--n", "1", "--terms", "2"}).out == "1\n0\n0\n");
  CHECK(run({"growth", "--n", "4", "--terms", "1", "--format", "json"}).out ==
        "{\"n\":4,\"generators\":\"simple-elements\",\"coefficients\":[\"1\",\"23\"]}\n");
}

TEST_CASE("growth writes --out and reuses --cache") {
  const auto out = scratch("growth.csv");
  const auto cache = scratch("counts.txt");
  std::filesystem::remove(cache);
  auto r = run({"growth", "--n", "6", "--terms", "3", "--format", "csv", "--out", out.string(), "--cache",
                cache.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const std::string first = slurp(out);
  CHECK(first.rfind("l,a\n0,1\n1,719\n", 0) == 0);
  CHECK(std::filesystem::file_size(cache) > 0);
  r = run({"growth", "--n", "6", "--terms", "3", "--format", "csv", "--cache", cache.string()});
  CHECK(r.out == first);

  std::ofstream(cache) << "2+1;3;x\n";
  r = run({"growth", "--n", "3", "--cache", cache.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 1") != std::string::npos);
  std::filesystem::remove(out);
  std::filesystem::remove(cache);
}

TEST_CASE("count-graphs") {
  CHECK(run({"count-graphs", "--a", "2,1,1", "--b", "1,1,1,1"}).out == "12\n");
  CHECK(run({"count-graphs", "--a", "4", "--b", "4"}).out == "0\n");
  CHECK(run({"count-graphs", "--a", "1,1", "--b", "2"}).out == "1\n");
  CHECK(run({"count-graphs", "--a", "1,0,2,1", "--b", "2,2", "--format", "json"}).out ==
        "{\"a\":\"2+1+1\",\"b\":\"2+2\",\"count\":\"2\"}\n");
  CHECK(run({"count-graphs", "--a", "2,2", "--b", "2,2", "--format", "csv"}).out == "a,b,count\n2+2,2+2,1\n");
  const auto r = run({"count-graphs", "--a", "2,1", "--b", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("3") != std::string::npos);
  CHECK(r.err.find("2") != std::string::npos);
  CHECK(run({"count-graphs", "--a", "2,x", "--b", "2"}).code == 2);
}

TEST_CASE("matrix") {
  auto r = run({"matrix", "--n", "4", "--kind", "ttilde"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "4       | 24 21 19 13  1\n"
        "3+1     |  0  2  2  4  6\n"
        "2+2     |  0  1  2  3  5\n"
        "2+1+1   |  0  0  1  4 11\n"
        "1+1+1+1 |  0  0  0  0  1\n");
  r = run({"matrix", "--n", "4", "--kind", "full-t", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("label,{},{1},{2},\"{1,2}\",{3},\"{1,3}\",\"{2,3}\",\"{1,2,3}\"\n{},24,21,19,13,21,13,13,1\n", 0) == 0);
  r = run({"matrix", "--n", "4", "--kind", "m", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[\"1\",\"2\",\"1\",\"3\",\"1\"]") != std::string::npos);
  CHECK(run({"matrix", "--n", "4", "--kind", "core"}).out.rfind("4       | -1  2  1 -3  1\n", 0) == 0);
  CHECK(run({"matrix", "--n", "3", "--kind", "ntilde"}).code == 0);
  CHECK(run({"matrix", "--n", "4", "--kind", "bogus"}).code == 2);
  CHECK(run({"matrix", "--n", "9", "--kind", "full-t"}).code == 2);
  CHECK(run({"matrix", "--n", "9", "--kind", "full-t", "--max-automaton-n", "9"}).code == 0);
}

TEST_CASE("verify") {
  auto r = run({"verify", "--n", "4", "--max-len", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": false") == std::string::npos);
  CHECK(r.out.find("T = S^-1 C P^t Ntilde P") != std::string::npos);
  CHECK(run({"verify", "--n", "2", "--max-len", "6"}).code == 0);
  r = run({"verify", "--n", "20"});
  CHECK(r.code == 2);
  CHECK(r.err.find("bound") != std::string::npos);
  CHECK(run({"verify", "--n", "3", "--format", "plain"}).out.rfind("PASS ", 0) == 0);
}

TEST_CASE("bench") {
  const auto r = run({"bench", "--n-list", "2,7,10", "--terms", "10"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "n,seconds");
  CHECK(rows[1].rfind("2,", 0) == 0);
  CHECK(rows[3].rfind("10,", 0) == 0);
  CHECK(run({"bench", "--n-list", "1"}).code == 2);
  CHECK(run({"bench", "--n-list", "3,,4"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"growth"}).code == 2);
  CHECK(run({"growth", "--n", "0"}).code == 2);
  CHECK(run({"growth", "--n", "3", "--format", "xml"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("identical invocations give identical output") {
  const auto a = run({"matrix", "--n", "6", "--kind", "ttilde", "--format", "json"});
  const auto b = run({"matrix", "--n", "6", "--kind", "ttilde", "--format", "json"});
  CHECK(a.out == b.out);
}
