// Copyright 2026 The schmidt authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "schmidt/io.hpp"
#include "support/test_helpers.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;
using namespace schmidt;

namespace {

std::string cli() {
  const char* path = std::getenv("SCHMIDT_CLI");
  REQUIRE_MESSAGE(path != nullptr, "SCHMIDT_CLI must point at the built binary");
  return path;
}

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  static int counter = 0;
  const fs::path outfile = fs::temp_directory_path() / ("schmidt_cli_out_" +
                                                        std::to_string(::getpid()) + "_" +
                                                        std::to_string(counter++) + ".txt");
  const std::string cmd = cli() + " " + args + " > " + outfile.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(outfile);
  r.out.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  fs::remove(outfile);
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("schmidt_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("exit code contract on ghz, w and malformed input") {
  TempDir tmp;
  write_text_file(tmp.file("ghz.json"), save_state(test_support::ghz(3)));
  write_text_file(tmp.file("w.json"), save_state(test_support::w3()));
  write_text_file(tmp.file("bad.json"), "{\"dims\":[2,2]}");

  const Run g = run("check " + tmp.file("ghz.json"));
  CHECK(g.exit_code == 0);
  const Json gj = Json::parse(g.out);
  CHECK(gj["decomposable"] == true);
  CHECK(gj["rank"] == 2);

  const Run w = run("check " + tmp.file("w.json"));
  CHECK(w.exit_code == 2);
  const Json wj = Json::parse(w.out);
  CHECK(wj["decomposable"] == false);
  CHECK(wj["reason"] != "None");

  CHECK(run("check " + tmp.file("bad.json")).exit_code == 1);
  CHECK(run("check " + tmp.file("missing.json")).exit_code == 1);
}

TEST_CASE("gen, decompose and verify form a closed loop") {
  TempDir tmp;
  const std::string state = tmp.file("s.json");
  CHECK(run("gen --dims 2,3,2 --rank 2 --seed 42 --out " + state).exit_code == 0);

  const Run d = run("decompose " + state);
  CHECK(d.exit_code == 0);
  const Json dj = Json::parse(d.out);
  REQUIRE(dj["decomposable"] == true);

  const auto sidecar = load_decomposition(read_text_file(state + ".decomp.json"));
  REQUIRE(dj["coeffs"].size() == sidecar.decomposition.rank());
  for (std::size_t i = 0; i < sidecar.decomposition.rank(); ++i) {
    CHECK(std::abs(dj["coeffs"][i].get<double>() - sidecar.decomposition.coeffs[i]) < 1e-8);
  }

  CHECK(run("verify " + state + " " + state + ".decomp.json").exit_code == 0);

  // A decomposition of some other state does not verify.
  const std::string other = tmp.file("o.json");
  CHECK(run("gen --dims 2,3,2 --rank 2 --seed 43 --out " + other).exit_code == 0);
  const Run bad = run("verify " + state + " " + other + ".decomp.json");
  CHECK(bad.exit_code == 2);
  CHECK(Json::parse(bad.out)["residual"].get<double>() > 1e-2);
}

TEST_CASE("schmidt-number and reduced") {
  TempDir tmp;
  write_text_file(tmp.file("ghz.json"), save_state(test_support::ghz(3)));
  const Run sn = run("schmidt-number " + tmp.file("ghz.json") + " --keep 1");
  CHECK(sn.exit_code == 0);
  CHECK(Json::parse(sn.out)["schmidt_number"] == 2);

  const Run red = run("reduced " + tmp.file("ghz.json") + " --keep 1,2");
  CHECK(red.exit_code == 0);
  const Json rj = Json::parse(red.out);
  CHECK(rj["dims"] == Json::array({2, 2}));
  CHECK(rj["density"].size() == 16);
}

TEST_CASE("purify plugs back into check") {
  TempDir tmp;
  write_text_file(tmp.file("rho.json"),
                  save_density({2}, DensityMatrix::unchecked([] {
                                  ComplexMatrix m = ComplexMatrix::identity(2);
                                  m *= 0.5;
                                  return m;
                                }())));
  const std::string pur = tmp.file("pur.json");
  CHECK(run("purify " + tmp.file("rho.json") + " --ancilla-dim 2 --out " + pur).exit_code == 0);
  const Run c = run("check " + pur);
  CHECK(c.exit_code == 0);
  CHECK(Json::parse(c.out)["rank"] == 2);
}

TEST_CASE("partition subcommand") {
  const Run mx = run("partition --dims 2,2,2,2 --max");
  CHECK(mx.exit_code == 0);
  CHECK(Json::parse(mx.out)["k_star"] == "4");

  const Run yes = run("partition --dims 2,3,5,7 --k 10");
  CHECK(yes.exit_code == 0);
  CHECK(Json::parse(yes.out)["feasible"] == true);

  const Run no = run("partition --dims 2,2,2 --k 3");
  CHECK(no.exit_code == 2);
  CHECK(Json::parse(no.out)["feasible"] == false);

  CHECK(run("partition --dims 2,2").exit_code == 1);  // neither --k nor --max
}

TEST_CASE("batch check runs files in parallel and keeps order") {
  TempDir tmp;
  write_text_file(tmp.file("a.json"), save_state(test_support::ghz(3)));
  write_text_file(tmp.file("b.json"), save_state(test_support::w3()));
  const Run r =
      run("--jobs 2 check " + tmp.file("a.json") + " " + tmp.file("b.json"));
  CHECK(r.exit_code == 2);  // one negative verdict, no errors
  std::istringstream lines(r.out);
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(Json::parse(first)["file"].get<std::string>() == tmp.file("a.json"));
  CHECK(Json::parse(first)["decomposable"] == true);
  CHECK(Json::parse(second)["decomposable"] == false);
}

TEST_CASE("text format is available") {
  TempDir tmp;
  write_text_file(tmp.file("ghz.json"), save_state(test_support::ghz(3)));
  const Run r = run("--format text check " + tmp.file("ghz.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("decomposable: yes") != std::string::npos);
}
