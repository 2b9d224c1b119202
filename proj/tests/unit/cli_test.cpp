#include "catch_amalgamated.hpp"

#include <filesystem>
#include <sstream>

#include "susy/cli.hpp"
#include "test_support.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome cli(std::vector<std::string> args) {
  args.insert(args.begin(), "susy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = susy::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("susy_cli_test_" + name)).string();
}

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0", "[cli]") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"run"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"run", "no_such_scenario"}).code == 2);
  CHECK(cli({"check", "/nonexistent/trace.jsonl"}).code == 2);
}

TEST_CASE("list-scenarios names the bundled set", "[cli]") {
  const auto r = cli({"list-scenarios"});
  CHECK(r.code == 0);
  for (const auto* name : {"happy_path", "round_trip", "replay_attack", "reorg_before_conf", "stuck_swap_recovery"}) {
    CHECK(r.out.find(name) != std::string::npos);
  }
}

TEST_CASE("run then check", "[cli]") {
  const std::string trace = temp_path("happy.jsonl");
  const auto r = cli({"run", "happy_path", "--trace", trace});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("happy_path: ok") != std::string::npos);
  const auto c = cli({"check", trace});
  CHECK(c.code == 0);
  CHECK(c.out == "ok\n");
  std::filesystem::remove(trace);

  const auto to_stdout = cli({"run", "happy_path"});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out.substr(0, to_stdout.out.find('\n')).find("\"kind\":\"header\"") != std::string::npos);
}

TEST_CASE("invalid scenario file exits 2", "[cli]") {
  const auto r = cli({"run", std::string(SUSY_TEST_DATA_DIR) + "/deep_fork.json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("INVALID") != std::string::npos);
}

TEST_CASE("generate writes a runnable scenario", "[cli]") {
  const std::string path = temp_path("gen.json");
  REQUIRE(cli({"generate", "--seed", "9", "--swaps", "8", "--out", path}).code == 0);
  CHECK(cli({"run", path}).code == 0);
  const auto again = cli({"generate", "--seed", "9", "--swaps", "8"});
  CHECK(again.out == susy::test::read_file(path));
  std::filesystem::remove(path);
}
