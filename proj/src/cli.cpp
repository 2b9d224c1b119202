#include "susy/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "susy/bundled.hpp"
#include "susy/runner.hpp"
#include "susy/trace.hpp"

namespace susy {

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int do_run(const std::string& what, std::optional<std::uint64_t> seed, const std::string& trace_path,
           std::ostream& out, std::ostream& err) {
  std::string text;
  if (std::filesystem::is_regular_file(what)) {
    auto t = read_file(what);
    if (!t) {
      err << "cannot read " << what << "\n";
      return 2;
    }
    text = std::move(*t);
  } else if (auto b = scenario::find_bundled(what)) {
    text = std::string(*b);
  } else {
    err << "no scenario file or bundled scenario named '" << what << "'\n";
    return 2;
  }

  scenario::Scenario s;
  try {
    s = scenario::parse_scenario_text(text);
  } catch (const scenario::InvalidScenario& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return 2;
  }
  const scenario::RunResult r = scenario::run(s, seed);

  if (trace_path.empty()) {
    for (const auto& line : r.trace) out << line << "\n";
  } else {
    std::ofstream f(trace_path, std::ios::binary);
    if (!f) {
      err << "cannot write " << trace_path << "\n";
      return 2;
    }
    for (const auto& line : r.trace) f << line << "\n";
  }

  const char* verdict = r.exit_code == 0 ? "ok" : r.exit_code == 1 ? "FAILED" : "INVALID";
  err << s.name << ": " << verdict << " (" << r.trace.size() << " trace records)\n";
  for (const auto& f : r.failures) err << "  " << f << "\n";
  return r.exit_code;
}

int do_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "cannot read " << path << "\n";
    return 2;
  }
  const trace::CheckReport rep = trace::check_stream(in);
  if (rep.malformed) err << "malformed trace: " << *rep.malformed << "\n";
  for (const auto& f : rep.failures) err << f << "\n";
  out << (rep.exit_code == 0 ? "ok" : rep.exit_code == 1 ? "violations found" : "malformed") << "\n";
  return rep.exit_code;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SuSy gateway simulator: runs scenarios and checks traces", "susy"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::optional<std::uint64_t> seed;
  std::string trace_path;
  auto* run = app.add_subcommand("run", "run a scenario file or bundled scenario and emit its trace");
  run->add_option("scenario", scenario_arg, "scenario JSON file or bundled name")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--trace", trace_path, "write the trace here instead of stdout");

  std::string check_path;
  auto* check = app.add_subcommand("check", "re-check the invariants of a trace file");
  check->add_option("trace", check_path, "JSON-lines trace")->required();

  auto* list = app.add_subcommand("list-scenarios", "list bundled scenarios");

  std::uint64_t gen_seed = 1;
  std::size_t gen_swaps = 50;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "write a random scenario");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--swaps", gen_swaps, "approximate number of swaps");
  gen->add_option("--out", gen_out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (*run) return do_run(scenario_arg, seed, trace_path, out, err);
  if (*check) return do_check(check_path, out, err);
  if (*list) {
    for (const auto& b : scenario::bundled()) {
      const auto doc = nlohmann::json::parse(b.text);
      out << b.name << "\t" << doc.value("description", "") << "\n";
    }
    return 0;
  }
  if (*gen) {
    const std::string text = scenario::to_json(scenario::generate_random(gen_seed, gen_swaps)).dump(2) + "\n";
    if (gen_out.empty()) {
      out << text;
    } else {
      std::ofstream f(gen_out, std::ios::binary);
      if (!f) {
        err << "cannot write " << gen_out << "\n";
        return 2;
      }
      f << text;
    }
    return 0;
  }
  return 2;
}

}  // namespace susy
