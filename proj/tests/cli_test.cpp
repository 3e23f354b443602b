// Copyright 2026 The fracchrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "fracchrom/json_io.hpp"

using namespace fracchrom;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(FRACCHROM_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fracchrom_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("validate") {
  TempDir tmp;
  auto p72 = tmp.write("p72.txt", format_edge_list(named::generalized_petersen(7, 2)));
  auto k4 = tmp.write("k4.txt", format_edge_list(named::complete(4)));
  auto r = run_cli("validate " + p72 + " --require-cubic-triangle-free");
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["report"]["cubic"] == true);
  CHECK(j["class_check"] == "pass");
  CHECK(run_cli("validate " + k4 + " --require-cubic-triangle-free").code == 2);
  CHECK(run_cli("validate " + k4).code == 0);
  CHECK(run_cli("validate " + (tmp.path / "missing.txt").string()).code == 2);
  auto bad = tmp.write("bad.txt", "3 2\n0 1\n0 1\n");
  CHECK(run_cli("validate " + bad).code == 2);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("two-factor and pinning") {
  TempDir tmp;
  auto pet = tmp.write("pet.g6", "IheA@GUAo\n");
  auto k33 = tmp.write("k33.txt", format_edge_list(named::complete_bipartite(3, 3)));
  auto r = run_cli("two-factor " + pet);
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["components"] == 2);
  CHECK(j["two_factor"]["cycles"][0].size() == 5);
  auto tf_path = tmp.write("tf.json", r.out);
  CHECK(Json::parse(run_cli("two-factor " + k33).out)["components"] == 1);
  CHECK(run_cli("two-factor " + tmp.write("c6.txt", format_edge_list(named::cycle(6)))).code == 2);

  auto pinned = run_cli("prob " + pet + " --two-factor " + tf_path);
  auto free = run_cli("prob " + pet);
  CHECK(pinned.code == 0);
  CHECK(pinned.out == free.out);
  auto pj = Json::parse(pinned.out);
  CHECK(pj["verdict"] == "pass");
  CHECK(pj["mode"] == "exact");
  CHECK(parse_rational(pj["min_marginal"].get<std::string>()) >= target_marginal());
  auto broken = tmp.write("broken.json", R"({"cycles": [[0, 1, 2, 3, 4]]})");
  CHECK(run_cli("prob " + pet + " --two-factor " + broken).code == 2);
}

TEST_CASE("prob modes and guards") {
  TempDir tmp;
  auto pet = tmp.write("pet.g6", "IheA@GUAo\n");
  auto a = run_cli("prob " + pet + " --trials 20000 --seed 5");
  auto b = run_cli("prob " + pet + " --trials 20000 --seed 5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = Json::parse(a.out);
  CHECK(j["monte_carlo"]["seed"] == 5);
  CHECK(j["monte_carlo"]["violations"] == 0);
  CHECK(run_cli("prob " + pet + " --trials 20000 --seed 6").out != a.out);
  CHECK(Json::parse(run_cli("prob " + pet + " --trials 100").out)["monte_carlo"]["seed"].is_number());
  CHECK(run_cli("prob " + pet + " --max-orient 4").code == 3);
  CHECK(run_cli("prob " + pet + " --phase4-feasibility sideways").code == 2);
  auto rec = run_cli("prob " + pet + " --phase4-feasibility recompute");
  CHECK(rec.code == 0);
  CHECK(rec.out == run_cli("prob " + pet).out);
}

TEST_CASE("chif, certify and verify") {
  TempDir tmp;
  auto p72 = tmp.write("p72.txt", format_edge_list(named::generalized_petersen(7, 2)));
  auto c7 = tmp.write("c7.txt", format_edge_list(named::cycle(7)));
  auto k2 = tmp.write("k2.g6", "A_\n");
  CHECK(run_cli("chif " + p72 + " --format text").out == "14/5\n");
  CHECK(run_cli("chif " + c7 + " --format text").out == "7/3\n");
  CHECK(Json::parse(run_cli("chif " + k2).out)["chi_f"] == "2");

  auto cert_path = (tmp.path / "cert.json").string();
  CHECK(run_cli("certify " + p72 + " -o " + cert_path).code == 0);
  CHECK(run_cli("verify " + p72 + " " + cert_path).code == 0);
  auto j = Json::parse(std::ifstream(cert_path));
  CHECK(j["certificate"]["k"] == "32/11");
  j["certificate"]["multiplicity"][0] = 0;
  auto tampered = tmp.write("tampered.json", j.dump());
  CHECK(run_cli("verify " + p72 + " " + tampered).code == 2);

  auto bridged = tmp.write("bridged.txt", format_edge_list(testing::bridged_pentagons()));
  CHECK(run_cli("certify " + bridged).code == 0);
  auto k4 = tmp.write("k4.txt", format_edge_list(named::complete(4)));
  CHECK(run_cli("certify " + k4).code == 2);
}

TEST_CASE("corpus and generation") {
  TempDir tmp;
  fs::create_directories(tmp.path / "empty");
  auto e = Json::parse(run_cli("corpus " + (tmp.path / "empty").string()).out);
  CHECK(e["graphs"].empty());
  fs::create_directories(tmp.path / "g");
  std::ofstream(tmp.path / "g" / "pet.g6") << "IheA@GUAo\n";
  std::ofstream(tmp.path / "g" / "k33.g6") << "EFz_\n";
  auto r = run_cli("corpus " + (tmp.path / "g").string() + " --search-deficient 10");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["graphs"].size() == 2);
  CHECK(j["search"]["hits"].size() == 1);
  auto csv = run_cli("corpus " + (tmp.path / "g").string() + " --format text").out;
  CHECK(csv.rfind("name,n,", 0) == 0);

  auto gen = Json::parse(run_cli("gen-cubic 12 --triangle-free").out);
  CHECK(gen["count"] == 22);
}
