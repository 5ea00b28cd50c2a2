#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "wlstar/cli.hpp"

using namespace fx;
namespace fs = std::filesystem;

namespace {

std::string data(const char* name) { return std::string(WLSTAR_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  auto dir = fs::temp_directory_path() / "wlstar_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

// Runs the installed binary through the shell and returns its exit status.
int spawn(const std::string& args, std::string* out = nullptr) {
  std::string cmd = std::string(WLSTAR_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::string text;
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("learn writes the minimal automaton") {
  auto r = run({"learn", data("t1.json"), "--verify-depth", "8"});
  CHECK(r.code == cli::ok);
  auto doc = parse_automaton(r.out);
  auto learned = build_wdfsa(doc, Q{});
  CHECK(learned.num_states() == 2);
  CHECK_FALSE(equivalent(learned, t1()));
  CHECK(r.err.find("verified up to length 8") != std::string::npos);
}

TEST_CASE("learn writes files and a report") {
  auto out = scratch("learned.json"), dot = scratch("learned.dot"), rep = scratch("report.json");
  auto r = run({"learn", data("t1.json"), "--out", out.string(), "--dot", dot.string(), "--report",
                rep.string(), "--seed", "7", "--verify-depth", "5"});
  CHECK(r.code == cli::ok);
  CHECK(r.out.empty());
  CHECK(slurp(dot).rfind("digraph", 0) == 0);
  auto report = cli::report_from_json(Json::parse(slurp(rep)));
  CHECK(report.config.seed == 7);
  CHECK(report.config.semifield == "rational");
  CHECK(report.verification.passed == true);
  CHECK(report.verification.depth == 5u);
  CHECK(report.stats.dim_history.back() == 2);
  CHECK(report.automaton == Json::parse(slurp(out)));
  CHECK(cli::report_from_json(cli::report_to_json(report)) == report);
  CHECK_THROWS_AS(cli::report_from_json(Json::parse("{}")), ParseError);
}

TEST_CASE("learn rejects bad input") {
  CHECK(run({"learn", data("malformed.json")}).code == cli::bad_input);
  CHECK(run({"learn", data("nondeterministic.json")}).code == cli::bad_input);
  CHECK(run({"learn", data("missing.json")}).code == cli::bad_input);
  CHECK(run({"learn", data("t1.json"), "--semifield", "minplus"}).code == cli::bad_input);
  CHECK(run({"learn", data("t1.json"), "--bogus"}).code == cli::bad_input);
  CHECK(run({}).code == cli::bad_input);
  auto malformed = run({"learn", data("malformed.json")});
  CHECK(malformed.err.find("malformed automaton at byte") != std::string::npos);
}

TEST_CASE("learn hits the iteration cap") {
  auto r = run({"learn", data("t1.json"), "--max-iter", "1"});
  CHECK(r.code == cli::iteration_cap);
  CHECK(r.err.find("iteration cap") != std::string::npos);
}

TEST_CASE("error mapping") {
  std::ostringstream err;
  CHECK(cli::handle_error(OracleInconsistent("x"), err) == cli::oracle_inconsistent);
  CHECK(cli::handle_error(IterationCapExceeded("x"), err) == cli::iteration_cap);
  CHECK(cli::handle_error(ParseError("x"), err) == cli::bad_input);
  CHECK(cli::handle_error(AlphabetMismatch(), err) == cli::bad_input);
  CHECK(err.str().find("error: ") == 0);
}

TEST_CASE("equiv") {
  auto same = run({"equiv", data("t1.json"), data("t1.json")});
  CHECK(same.code == cli::ok);
  CHECK(same.out == "equivalent\n");
  auto diff = run({"equiv", data("t1.json"), data("t1_perturbed.json")});
  CHECK(diff.code == cli::different);
  CHECK(diff.out == "not equivalent\ncounterexample: b\nleft: 1/12\nright: 1/16\n");
  CHECK(run({"equiv", data("t1.json"), data("other_alphabet.json")}).code == cli::bad_input);
  CHECK(run({"equiv", data("t1.json"), data("minplus.json")}).code == cli::bad_input);
}

TEST_CASE("eval") {
  CHECK(run({"eval", data("t1.json"), "ab"}).out == "1/48\n");
  CHECK(run({"eval", data("t1.json")}).out == "1/2\n");
  CHECK(run({"eval", data("minplus.json"), "aaa"}).out == "5\n");
  CHECK(run({"eval", data("t1.json"), "abz"}).code == cli::bad_input);
}

TEST_CASE("random is reproducible") {
  auto a = run({"random", "--states", "5", "--alphabet-size", "3", "--seed", "9"});
  auto b = run({"random", "-n", "5", "-k", "3", "--seed", "9"});
  CHECK(a.code == cli::ok);
  CHECK(a.out == b.out);
  CHECK(a.out != run({"random", "-n", "5", "-k", "3", "--seed", "10"}).out);
  auto doc = parse_automaton(a.out);
  CHECK(doc.states == 5);
  CHECK(run({"random", "-n", "0"}).code == cli::bad_input);
  CHECK(run({"random", "-n", "3", "--semifield", "minplus"}).code == cli::ok);
}

TEST_CASE("bench") {
  auto r = run({"bench", "--states", "1,2,3", "--alphabet-sizes", "2", "--reps", "5"});
  CHECK(r.code == cli::ok);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 17);
  CHECK(all.front().rfind("N,sigma,rep,seed,min_states,learned_states,", 0) == 0);
  CHECK(all.back().rfind("# loglog slope: ", 0) == 0);
  for (std::size_t i = 1; i <= 15; ++i) {
    std::vector<std::string> cells;
    std::stringstream row(all[i]);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 16);
    CHECK(cells[4] == cells[5]);
  }
  CHECK(run({"bench", "--states", "0"}).code == cli::bad_input);
  CHECK(run({"bench", "--reps", "0"}).code == cli::bad_input);
}

TEST_CASE("export-dot golden") {
  const char* golden =
      "digraph wfsa {\n"
      "  rankdir=LR;\n"
      "  q0 [shape=doublecircle, label=\"0\\n1/2\"];\n"
      "  q1 [shape=doublecircle, label=\"1\\n1/3\"];\n"
      "  start0 [shape=point];\n"
      "  start0 -> q0 [label=\"1\"];\n"
      "  q0 -> q0 [label=\"a/1/4\"];\n"
      "  q0 -> q1 [label=\"b/1/4\"];\n"
      "  q1 -> q1 [label=\"a/1/3\"];\n"
      "  q1 -> q0 [label=\"b/1/3\"];\n"
      "}\n";
  CHECK(run({"export-dot", data("t1.json")}).out == golden);
}

TEST_CASE("binary exit codes") {
  CHECK(spawn("--help") == 0);
  CHECK(spawn("learn " + data("t1.json")) == 0);
  CHECK(spawn("equiv " + data("t1.json") + " " + data("t1_perturbed.json")) == 1);
  CHECK(spawn("learn " + data("malformed.json")) == 2);
  CHECK(spawn("learn " + data("t1.json") + " --max-iter 0") == 4);
  std::string text;
  CHECK(spawn("eval " + data("t1.json") + " b", &text) == 0);
  CHECK(text == "1/12\n");
}
