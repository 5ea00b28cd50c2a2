#include "wlstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "wlstar/wlstar.hpp"

namespace wlstar::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

// "ε" would not survive a round trip through parse_word, so the report keeps
// words in their plain formatted form.
std::string word_text(const Alphabet& alphabet, const Word& w) { return alphabet.format_word(w); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> json_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

struct LearnArgs {
  std::string target;
  std::optional<std::string> semifield;
  double tolerance = NonnegReal::default_tolerance;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> verify_depth;
  std::optional<std::string> out;
  std::optional<std::string> dot;
  std::optional<std::string> report;
  std::uint64_t seed = 0;
};

int cmd_learn(const LearnArgs& args, std::ostream& out, std::ostream& err) {
  auto doc = load_automaton(args.target);
  if (args.semifield && parse_semifield_kind(*args.semifield) != doc.semifield)
    throw SemifieldMismatch();
  return with_semifield(doc.semifield, args.tolerance, [&](auto sf) -> int {
    using K = decltype(sf);
    auto target = build_wdfsa(doc, sf);
    ReferenceOracle<K> oracle(target);
    LearnOptions<K> opts;
    opts.max_iterations = args.max_iter;
    auto result = lstar<K>(oracle, target.alphabet(), sf, opts);
    const auto& st = result.stats;
    const Alphabet& alphabet = target.alphabet();

    RunReport report;
    report.automaton = doc_to_json(to_doc(result.automaton));
    report.stats.membership_queries = st.ledger.membership_count;
    report.stats.distinct_membership_queries = st.ledger.distinct_membership_count;
    report.stats.equivalence_queries = st.ledger.equivalence_count;
    report.stats.consistency_fixes = st.consistency_fixes;
    report.stats.closure_fixes = st.closure_fixes;
    report.stats.null_row_repairs = st.null_row_repairs;
    for (const auto& t : st.counterexamples) report.stats.counterexamples.push_back(word_text(alphabet, t));
    report.stats.dim_history = st.dim_history;
    report.stats.hypothesis_dims = st.hypothesis_dims;
    report.stats.cells_stamped = st.cells_stamped;
    report.stats.iterations = st.iterations;
    report.stats.wall_time_seconds = st.wall_time.count();
    report.config.semifield = std::string(K::name);
    report.config.tolerance = args.tolerance;
    report.config.seed = args.seed;
    report.config.max_iterations = args.max_iter;

    int code = ok;
    if (args.verify_depth) {
      BruteforceOracle<K> check(target, *args.verify_depth);
      auto cex = check.equivalence(result.automaton);
      report.verification.depth = args.verify_depth;
      report.verification.passed = !cex;
      if (cex) {
        report.verification.counterexample = word_text(alphabet, *cex);
        code = different;
      }
    }

    std::string learned = format_automaton(to_doc(result.automaton));
    if (args.out)
      write_file(*args.out, learned);
    else
      out << learned;
    if (args.dot) write_file(*args.dot, to_dot(result.automaton));
    if (args.report) write_file(*args.report, report_to_json(report).dump(2) + "\n");

    err << "learned " << result.automaton.num_states() << " states with "
        << st.ledger.equivalence_count << " equivalence and " << st.ledger.membership_count
        << " membership queries\n";
    if (report.verification.passed)
      err << (*report.verification.passed ? "verified" : "verification FAILED") << " up to length "
          << *args.verify_depth << "\n";
    return code;
  });
}

int cmd_equiv(const std::string& path_a, const std::string& path_b, double tolerance,
              std::ostream& out) {
  auto doc_a = load_automaton(path_a);
  auto doc_b = load_automaton(path_b);
  if (doc_a.semifield != doc_b.semifield) throw SemifieldMismatch();
  return with_semifield(doc_a.semifield, tolerance, [&](auto sf) -> int {
    auto a = build_wdfsa(doc_a, sf);
    auto b = build_wdfsa(doc_b, sf);
    auto cex = equivalent(a, b);
    if (!cex) {
      out << "equivalent\n";
      return ok;
    }
    out << "not equivalent\n"
        << "counterexample: " << show_word(a.alphabet(), *cex) << "\n"
        << "left: " << sf.format(evaluate(a, *cex)) << "\n"
        << "right: " << sf.format(evaluate(b, *cex)) << "\n";
    return different;
  });
}

int cmd_eval(const std::string& path, const std::string& text, double tolerance, std::ostream& out) {
  auto doc = load_automaton(path);
  return with_semifield(doc.semifield, tolerance, [&](auto sf) -> int {
    auto a = build_wfsa(doc, sf);
    out << sf.format(evaluate(a, a.alphabet().parse_word(text))) << "\n";
    return ok;
  });
}

struct RandomArgs {
  std::size_t states = 0;
  std::size_t alphabet_size = 2;
  std::uint64_t seed = 0;
  std::string semifield = "rational";
  std::optional<std::string> out;
};

int cmd_random(const RandomArgs& args, std::ostream& out) {
  auto kind = parse_semifield_kind(args.semifield);
  return with_semifield(kind, NonnegReal::default_tolerance, [&](auto sf) -> int {
    auto a = random_wdfsa(args.states, Alphabet::letters(args.alphabet_size), args.seed, sf);
    std::string text = format_automaton(to_doc(a));
    if (args.out)
      write_file(*args.out, text);
    else
      out << text;
    return ok;
  });
}

struct BenchArgs {
  std::vector<std::size_t> states{2, 4, 8};
  std::vector<std::size_t> alphabet_sizes{2};
  std::size_t reps = 5;
  std::uint64_t seed = 1;
  std::string semifield = "rational";
  std::optional<std::string> out;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

// Least-squares slope of log(median wall time) against log N.
std::optional<double> loglog_slope(const std::map<std::size_t, std::vector<double>>& times) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, ts] : times) pts.emplace_back(std::log(double(n)), std::log(median(ts)));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.states.empty() || args.alphabet_sizes.empty() || args.reps == 0)
    throw InvalidArgument("benchmark grid is empty");
  for (auto n : args.states)
    if (n == 0) throw InvalidArgument("state counts must be positive");
  for (auto s : args.alphabet_sizes)
    if (s == 0) throw InvalidArgument("alphabet sizes must be positive");
  auto kind = parse_semifield_kind(args.semifield);

  std::ostringstream csv;
  csv << "N,sigma,rep,seed,min_states,learned_states,membership_queries,"
         "distinct_membership_queries,equivalence_queries,consistency_fixes,closure_fixes,"
         "null_row_repairs,max_counterexample_length,prefixes,suffixes,wall_seconds\n";
  std::map<std::size_t, std::vector<double>> times;
  with_semifield(kind, NonnegReal::default_tolerance, [&](auto sf) {
    using K = decltype(sf);
    for (std::size_t n : args.states)
      for (std::size_t sigma : args.alphabet_sizes)
        for (std::size_t rep = 0; rep < args.reps; ++rep) {
          std::uint64_t seed = args.seed * 1000003u + n * 1009u + sigma * 101u + rep;
          auto target = random_wdfsa(n, Alphabet::letters(sigma), seed, sf);
          ReferenceOracle<K> oracle(target);
          auto result = lstar<K>(oracle, target.alphabet(), sf);
          const auto& st = result.stats;
          std::size_t max_cex = 0;
          for (const auto& t : st.counterexamples) max_cex = std::max(max_cex, t.size());
          double secs = st.wall_time.count();
          times[n].push_back(secs);
          csv << n << ',' << sigma << ',' << rep << ',' << seed << ','
              << minimal_state_count_bruteforce(target, 2 * n) << ','
              << result.automaton.num_states() << ',' << st.ledger.membership_count << ','
              << st.ledger.distinct_membership_count << ',' << st.ledger.equivalence_count << ','
              << st.consistency_fixes << ',' << st.closure_fixes << ',' << st.null_row_repairs
              << ',' << max_cex << ',' << result.final_system.prefixes().size() << ','
              << result.final_system.suffixes().size() << ',' << std::setprecision(9) << secs
              << '\n';
        }
  });
  auto slope = loglog_slope(times);
  csv << "# loglog slope: " << (slope ? detail::format_double(*slope) : std::string("n/a")) << "\n";
  if (args.out)
    write_file(*args.out, csv.str());
  else
    out << csv.str();
  return ok;
}

int cmd_export_dot(const std::string& path, const std::optional<std::string>& dest, std::ostream& out) {
  auto doc = load_automaton(path);
  return with_semifield(doc.semifield, NonnegReal::default_tolerance, [&](auto sf) -> int {
    std::string text = to_dot(build_wfsa(doc, sf));
    if (dest)
      write_file(*dest, text);
    else
      out << text;
    return ok;
  });
}

} // namespace

Json report_to_json(const RunReport& r) {
  Json j;
  j["automaton"] = r.automaton;
  Json s;
  s["membership_queries"] = r.stats.membership_queries;
  s["distinct_membership_queries"] = r.stats.distinct_membership_queries;
  s["equivalence_queries"] = r.stats.equivalence_queries;
  s["consistency_fixes"] = r.stats.consistency_fixes;
  s["closure_fixes"] = r.stats.closure_fixes;
  s["null_row_repairs"] = r.stats.null_row_repairs;
  s["counterexamples"] = r.stats.counterexamples;
  s["dim_history"] = r.stats.dim_history;
  s["hypothesis_dims"] = r.stats.hypothesis_dims;
  s["cells_stamped"] = r.stats.cells_stamped;
  s["iterations"] = r.stats.iterations;
  s["wall_time_seconds"] = r.stats.wall_time_seconds;
  j["stats"] = std::move(s);
  j["verification"] = {{"depth", optional_json(r.verification.depth)},
                       {"passed", optional_json(r.verification.passed)},
                       {"counterexample", optional_json(r.verification.counterexample)}};
  j["config"] = {{"semifield", r.config.semifield},
                 {"tolerance", r.config.tolerance},
                 {"seed", r.config.seed},
                 {"max_iterations", optional_json(r.config.max_iterations)}};
  return j;
}

RunReport report_from_json(const Json& j) {
  try {
    RunReport r;
    r.automaton = j.at("automaton");
    const Json& s = j.at("stats");
    r.stats.membership_queries = s.at("membership_queries").get<std::size_t>();
    r.stats.distinct_membership_queries = s.at("distinct_membership_queries").get<std::size_t>();
    r.stats.equivalence_queries = s.at("equivalence_queries").get<std::size_t>();
    r.stats.consistency_fixes = s.at("consistency_fixes").get<std::size_t>();
    r.stats.closure_fixes = s.at("closure_fixes").get<std::size_t>();
    r.stats.null_row_repairs = s.at("null_row_repairs").get<std::size_t>();
    r.stats.counterexamples = s.at("counterexamples").get<std::vector<std::string>>();
    r.stats.dim_history = s.at("dim_history").get<std::vector<std::size_t>>();
    r.stats.hypothesis_dims = s.at("hypothesis_dims").get<std::vector<std::size_t>>();
    r.stats.cells_stamped = s.at("cells_stamped").get<std::size_t>();
    r.stats.iterations = s.at("iterations").get<std::size_t>();
    r.stats.wall_time_seconds = s.at("wall_time_seconds").get<double>();
    const Json& v = j.at("verification");
    r.verification.depth = json_optional<std::size_t>(v.at("depth"));
    r.verification.passed = json_optional<bool>(v.at("passed"));
    r.verification.counterexample = json_optional<std::string>(v.at("counterexample"));
    const Json& c = j.at("config");
    r.config.semifield = c.at("semifield").get<std::string>();
    r.config.tolerance = c.at("tolerance").get<double>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.max_iterations = json_optional<std::size_t>(c.at("max_iterations"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed run report: ") + e.what());
  }
}

int handle_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const OracleInconsistent*>(&e)) return oracle_inconsistent;
  if (dynamic_cast<const IterationCapExceeded*>(&e)) return iteration_cap;
  return bad_input;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted L* learner for deterministic weighted automata", "wlstar"};
  app.require_subcommand(1);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "learn a target automaton through its reference oracle");
  learn_cmd->add_option("target", learn.target, "target automaton file")->required();
  learn_cmd->add_option("--semifield", learn.semifield, "expected semifield of the target");
  learn_cmd->add_option("--tolerance", learn.tolerance, "relative tolerance for real weights");
  learn_cmd->add_option("--max-iter", learn.max_iter, "cap on fixes plus equivalence queries");
  learn_cmd->add_option("--verify-depth", learn.verify_depth, "brute-force check up to this length");
  learn_cmd->add_option("--out", learn.out, "learned automaton (default: stdout)");
  learn_cmd->add_option("--dot", learn.dot, "write the learned automaton as DOT");
  learn_cmd->add_option("--report", learn.report, "write the JSON run report");
  learn_cmd->add_option("--seed", learn.seed, "recorded in the report");

  std::string equiv_a, equiv_b;
  double equiv_tol = NonnegReal::default_tolerance;
  auto* equiv_cmd = app.add_subcommand("equiv", "check two automata for equivalence");
  equiv_cmd->add_option("a", equiv_a)->required();
  equiv_cmd->add_option("b", equiv_b)->required();
  equiv_cmd->add_option("--tolerance", equiv_tol);

  std::string eval_path, eval_word;
  double eval_tol = NonnegReal::default_tolerance;
  auto* eval_cmd = app.add_subcommand("eval", "weight of a word");
  eval_cmd->add_option("automaton", eval_path)->required();
  eval_cmd->add_option("word", eval_word, "the word; omit for ε");
  eval_cmd->add_option("--tolerance", eval_tol);

  RandomArgs rnd;
  auto* random_cmd = app.add_subcommand("random", "generate a random trimmed WDFSA");
  random_cmd->add_option("--states,-n", rnd.states)->required();
  random_cmd->add_option("--alphabet-size,-k", rnd.alphabet_size);
  random_cmd->add_option("--seed", rnd.seed);
  random_cmd->add_option("--semifield", rnd.semifield);
  random_cmd->add_option("--out", rnd.out);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "learn random targets over a grid and time the runs");
  bench_cmd->add_option("--states", bench.states, "state counts")->delimiter(',');
  bench_cmd->add_option("--alphabet-sizes", bench.alphabet_sizes, "alphabet sizes")->delimiter(',');
  bench_cmd->add_option("--reps", bench.reps);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--semifield", bench.semifield);
  bench_cmd->add_option("--out", bench.out, "CSV destination (default: stdout)");

  std::string dot_path;
  std::optional<std::string> dot_out;
  auto* dot_cmd = app.add_subcommand("export-dot", "render an automaton as Graphviz DOT");
  dot_cmd->add_option("automaton", dot_path)->required();
  dot_cmd->add_option("--out", dot_out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }

  try {
    if (*learn_cmd) return cmd_learn(learn, out, err);
    if (*equiv_cmd) return cmd_equiv(equiv_a, equiv_b, equiv_tol, out);
    if (*eval_cmd) return cmd_eval(eval_path, eval_word, eval_tol, out);
    if (*random_cmd) return cmd_random(rnd, out);
    if (*bench_cmd) return cmd_bench(bench, out);
    if (*dot_cmd) return cmd_export_dot(dot_path, dot_out, out);
  } catch (const Error& e) {
    return handle_error(e, err);
  }
  return bad_input;
}

} // namespace wlstar::cli
