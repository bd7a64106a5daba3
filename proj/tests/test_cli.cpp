#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "test_support.hpp"
#include "webgeom/cli.hpp"
#include "webgeom/report.hpp"

using namespace webgeom;
using namespace webgeom::testing;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "webgeom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("webgeom_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("bounds command") {
  Run r = run({"bounds", "3", "3", "2", "1", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = report::Json::parse(r.out);
  CHECK(j["pi0"] == 6);
  CHECK(j["pi_prime"] == 8);
  CHECK(j["excess_ok"] == false);
  CHECK(report::Json::parse(run({"bounds", "4", "4", "2", "2", "--json"}).out)["pi_henaut"] == 1);
  auto zeros = report::Json::parse(run({"bounds", "3", "1", "2", "1", "--json"}).out);
  CHECK(zeros["pi0"] == 0);
  CHECK(zeros["pi_prime"] == 0);
  CHECK(run({"bounds", "3", "3", "3", "1"}).code == kExitInput);
  CHECK(run({"bounds", "3", "3", "2", "3"}).code == kExitInput);
  CHECK(run({"bounds", "3", "3", "2"}).code == kExitInput);
  CHECK(run({"bounds", "3", "3", "2", "1"}).out.find("pi0=6") != std::string::npos);
}

TEST_CASE("help documents the exit codes") {
  Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Exit codes") != std::string::npos);
  CHECK(run({}).code == kExitInput);
}

TEST_CASE("analyze command") {
  Run r = run({"analyze", web_path("w_lambda_2"), "--p", "2", "--closed", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = report::Json::parse(r.out);
  CHECK(j["report"]["verdict"] == "ordinary");
  CHECK(j["bounds"]["strongly_calibrated"] == true);

  CHECK(run({"analyze", web_path("parallel_lines"), "--p", "1"}).code == kExitOk);
  CHECK(run({"analyze", web_path("parallel_lines"), "--p", "1", "--expect-ordinary"}).code == kExitNegative);
  CHECK(run({"analyze", web_path("w_lambda_2"), "--p", "2", "--expect-ordinary"}).code == kExitOk);

  std::string empty = temp_file("empty.json", R"({"codimension": 2, "variables": ["x","y","z"], "foliations": []})");
  CHECK(run({"analyze", empty, "--p", "1"}).code == kExitInput);
  std::string broken = temp_file("broken.json", "{\"codimension\": 2,\n \"variables\": [\"x\"");
  Run b = run({"analyze", broken, "--p", "1"});
  CHECK(b.code == kExitParse);
  CHECK(b.err.find("line 2") != std::string::npos);
  std::string bad_expr = temp_file(
      "bad_expr.json", R"({"codimension": 1, "variables": ["x","y"], "foliations": [{"generators": ["x+"]}]})");
  CHECK(run({"analyze", bad_expr, "--p", "1"}).code == kExitParse);
  CHECK(run({"analyze", "/nonexistent.json", "--p", "1"}).code == kExitInput);
  CHECK(run({"analyze", web_path("goldberg_w1"), "--p", "1"}).code == kExitInput);  // not in general position
  CHECK(run({"analyze", web_path("w_lambda_2"), "--p", "1", "--precision", "10"}).code == kExitInput);
  CHECK(run({"analyze", web_path("w_lambda_2"), "--p", "1", "--points", "0"}).code == kExitInput);
}

TEST_CASE("analyze output is deterministic and round-trips") {
  std::vector<std::string> args{"analyze", web_path("w_lambda_half"), "--p", "2", "--json", "--seed", "4"};
  Run a = run(args), b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  auto j = report::Json::parse(a.out);
  OrdinarityReport rep = report::ordinarity_from_json(j["report"]);
  CHECK(report::to_json(rep) == j["report"]);
  CHECK(report::to_json(report::bound_profile_from_json(j["bounds"])) == j["bounds"]);

  std::string out = (std::filesystem::temp_directory_path() / "webgeom_test_out.json").string();
  std::filesystem::remove(out);
  args.push_back("--out");
  args.push_back(out);
  run(args);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(report::Json::parse(ss.str()) == j);

  Run pts = run({"analyze", web_path("w_lambda_half"), "--p", "2", "--json", "--point", "x=1/3,y=2,z=5"});
  CHECK(report::Json::parse(pts.out)["report"]["points"][0] == "x=1/3,y=2,z=5");
  CHECK(run({"analyze", web_path("w_lambda_half"), "--p", "2", "--point", "x=1/3,w=2"}).code == kExitInput);
}

TEST_CASE("verify command") {
  CHECK(run({"verify", web_path("goldberg_w3"), relation_path("goldberg_w3_p2")}).code == kExitOk);
  Run m = run({"verify", web_path("goldberg_w3"), relation_path("goldberg_w3_p2_mutated"), "--json"});
  CHECK(m.code == kExitNegative);
  CHECK(report::Json::parse(m.out)["relation"]["is_abelian"] == false);
  CHECK(run({"verify", web_path("w_lambda_1"), relation_path("w_lambda_1_eta"), relation_path("w_lambda_1_omega")}).code ==
        kExitOk);
  CHECK(run({"verify", web_path("w_lambda_1"), relation_path("w_lambda_1_omega"), relation_path("w_lambda_1_eta")}).code ==
        kExitOk);
  CHECK(run({"verify", web_path("w_lambda_0"), relation_path("w_lambda_0_omega_printed")}).code == kExitNegative);
  std::string wrong_p = temp_file("wrong_p.json", R"({"p": 3, "forms": []})");
  CHECK(run({"verify", web_path("w_lambda_1"), wrong_p}).code == kExitInput);
  std::string unknown = temp_file("unknown.json", R"({"p": 2, "forms": [{"foliation": 7, "components": {"1,2": "1"}}]})");
  CHECK(run({"verify", web_path("w_lambda_1"), unknown}).code == kExitInput);
}

TEST_CASE("curvature command") {
  Run half = run({"curvature", web_path("w_lambda_half"), "--p", "2", "--json"});
  CHECK(half.code == kExitNegative);
  auto j = report::Json::parse(half.out);
  CHECK(j["connection"]["flat"] == false);
  CHECK(run({"curvature", web_path("w_lambda_1"), "--p", "2"}).code == kExitOk);
  CHECK(run({"curvature", web_path("goldberg_w1"), "--p", "1"}).code == kExitInput);
  CHECK(run({"curvature", web_path("w_lambda_half"), "--p", "1"}).code == kExitInput);
}

TEST_CASE("bracket-check command") {
  CHECK(run({"bracket-check", web_path("w_lambda_2")}).code == kExitNegative);
  CHECK(run({"bracket-check", web_path("goldberg_w3")}).code == kExitInput);
  Run r = run({"bracket-check", web_path("w_lambda_2"), "--json"});
  CHECK(report::Json::parse(r.out)["fires"] == true);
}

TEST_CASE("installed binary honours the exit-code contract") {
  std::string cmd = std::string(WEBGEOM_CLI_PATH) + " bounds 3 3 3 1 > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == kExitInput);
  cmd = std::string(WEBGEOM_CLI_PATH) + " verify " + web_path("goldberg_w3") + " " + relation_path("goldberg_w3_p2") +
        " > /dev/null 2>&1";
  status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == kExitOk);
}
