#include <fstream>

#include "cli.hpp"
#include "doctest.h"

using nlohmann::json;
using rigidtori::cli::JobSpec;
using rigidtori::cli::run;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(RIGIDTORI_FIXTURE_DIR) + "/" + name);
  return json::parse(in);
}

JobSpec job(const std::string& command) {
  JobSpec j;
  j.command = command;
  return j;
}

}  // namespace

TEST_CASE("analyze S3") {
  const auto r = run(job("analyze"), load("s3.json"));
  REQUIRE(r.status == 0);
  CHECK(r.report["group"]["order"] == 6);
  CHECK(r.report["classes"].size() == 3);
  CHECK(r.report["character_table"]["degrees"] == json({1, 1, 2}));
}

TEST_CASE("polarize the Gaussian curve") {
  const auto r = run(job("polarize"), load("z4_gaussian.json"));
  REQUIRE(r.status == 0);
  CHECK(r.report["matrix"] == json({{0, 1}, {-1, 0}}));
}

TEST_CASE("exit codes") {
  const auto trivial = run(job("polarize"), load("trivial_rank4.json"));
  CHECK(trivial.status == 1);
  CHECK(trivial.report["error"]["name"] == "NotRigid");

  json doc = load("z4_gaussian.json");
  doc["representation"]["colour"] = "blue";
  const auto bad = run(job("polarize"), doc);
  CHECK(bad.status == 2);
  CHECK(bad.report.contains("error"));
}

TEST_CASE("enumerate rigid types over Q(zeta5)") {
  const auto r = run(job("enumerate-rigid"), load("z5_cyclotomic.json"));
  REQUIRE(r.status == 0);
  CHECK(r.report["count"] == 4);
  CHECK(r.report["types"].size() == 4);
}

TEST_CASE("rendering is deterministic under a seed") {
  JobSpec j = job("polarize");
  j.seed = 99;
  const json doc = load("z5_cyclotomic.json");
  const std::string a = rigidtori::cli::render(run(j, doc).report);
  const std::string b = rigidtori::cli::render(run(j, doc).report);
  CHECK(a == b);
  CHECK(a.back() == '\n');
}
