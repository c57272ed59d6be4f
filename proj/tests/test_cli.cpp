#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dessin/cli.hpp"
#include "dessin/orbits.hpp"

using namespace dessin;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("orbits report as json") {
  const auto r = invoke({"orbits", "15,3,2,1/4,1^17", "--prime", "7", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["orbit_sizes"] == nlohmann::json::array({6}));
  CHECK(j["verdict"] == "definitive");
  CHECK(j["degree_bound"] == 3);
  CHECK(to_json(orbit_report_from_json(r.out)) + "\n" == r.out);
  CHECK(invoke({"orbits", "15,3,2,1/4,1^17", "--prime", "7", "--format", "json"}).out == r.out);
}

TEST_CASE("orbits text report") {
  const auto r = invoke({"orbits", "6,2,1,1/4,1^6", "--prime", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict: definitive: one orbit of 3") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("polygon command") {
  const auto r = invoke({"polygon", "--poly", "6,-8,3", "--prime", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["segments"].size() == 1);
  CHECK(j["segments"][0]["valuation"] == "1/2");
  CHECK(j["segments"][0]["count"] == 2);
  const auto t = invoke({"polygon", "--poly", "6,-8,3", "--prime", "2"});
  CHECK(t.out.find("segment 1/2 x 2") != std::string::npos);
}

TEST_CASE("passport, trees and shabat commands") {
  const auto p = invoke({"passport", "15,3,2,1/4,1^17", "--format", "json"});
  CHECK(p.code == 0);
  const auto pj = nlohmann::json::parse(p.out);
  CHECK(pj["edges"] == 21);
  CHECK(pj["primes"].size() == 2);

  const auto t = invoke({"trees", "1,2,4,6/4,1^9", "--format", "json"});
  CHECK(t.code == 0);
  const auto tj = nlohmann::json::parse(t.out);
  CHECK(tj["count"] == 6);
  CHECK(tj["mirror_fixed_count"] == 0);
  CHECK(nlohmann::json::parse(invoke({"trees", "1,11,80,84/4,1^172", "--format", "json"}).out)["count"] == 6);

  const auto s = invoke({"shabat", "2,1,1/3,1", "--format", "json"});
  CHECK(s.code == 0);
  const auto sj = nlohmann::json::parse(s.out);
  CHECK(sj["eliminant"]["poly"] == "6,-8,3");
  CHECK(sj["model"]["black_leaves"] == "1/3,1");

  const auto target = invoke({"shabat", "6,2,1,1/4,1^6", "--target", "2", "--prime", "5"});
  CHECK(target.code == 0);
  CHECK(target.out.find("segment 1/3 x 3") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"orbits", "15,3,2,1/4,1^17", "--prime", "7", "--bogus"}).code == 1);
  CHECK(invoke({"orbits", "15,3,2,1/4,1^17"}).code == 1);
  CHECK(invoke({"orbits", "15,3,2,1/4,1^17", "--prime", "5"}).code == 1);
  CHECK(invoke({"passport", "1,2/3"}).code == 1);
  CHECK(invoke({"polygon", "--poly", "6,x", "--prime", "2"}).code == 1);
  CHECK(invoke({"trees", "1/1", "--format", "xml"}).code == 1);
  CHECK(invoke({"shabat", "2,1,1/3,1", "--target", "7"}).code == 1);
  const auto big = invoke({"trees", "25/1^25"});
  CHECK(big.code == 2);
  CHECK(big.err.find("unsupported") != std::string::npos);
  CHECK(big.out.empty());
  CHECK(invoke({"shabat", "1^5/5"}).code == 2);
}

TEST_CASE("help documents the formats") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Passport grammar") != std::string::npos);
  CHECK(r.out.find("verify-paper") != std::string::npos);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "dessin_cli_test.txt";
  const auto r = invoke({"polygon", "--poly", "-2,1", "--prime", "2", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str().find("segment 1 x 1") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("acceptance subcommand with one criterion") {
  const auto r = invoke({"verify-paper", "--criterion", "4", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["criteria"].size() == 1);
}
