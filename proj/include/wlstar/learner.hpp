#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wlstar/hankel.hpp"
#include "wlstar/oracle.hpp"

namespace wlstar {

// State of a run right before an equivalence query.
template <Semifield K>
struct BreakLine {
  const HankelSystem<K>& system;  // as observed, including null prefixes
  const HankelSystem<K>& reduced; // null prefixes dropped
  const Wdfsa<K>& hypothesis;
};

template <Semifield K>
struct LearnOptions {
  // Bound on fixes plus equivalence queries. Unset means 10 * (dim + 1),
  // re-evaluated as dim grows.
  std::optional<std::size_t> max_iterations;
  std::function<void(const BreakLine<K>&)> on_break_line;
};

struct LearnStats {
  QueryLedger ledger;
  std::size_t consistency_fixes = 0;
  std::size_t closure_fixes = 0;
  std::size_t null_row_repairs = 0;
  std::vector<Word> counterexamples;
  // dim after initialisation, then after every consistency or closure fix.
  std::vector<std::size_t> dim_history;
  // dim of the system behind each hypothesis.
  std::vector<std::size_t> hypothesis_dims;
  std::size_t cells_stamped = 0;
  std::size_t iterations = 0;
  std::chrono::duration<double> wall_time{0};
};

template <Semifield K>
struct LearnResult {
  Wdfsa<K> automaton;
  HankelSystem<K> final_system;
  LearnStats stats;
};

namespace detail {

// Adds c to S for every separating column of the given violations.
// Returns the number of suffixes added.
template <Semifield K>
std::size_t apply_consistency_fix(HankelSystem<K>& sys,
                                  const std::vector<ConsistencyWitness>& violations) {
  std::size_t added = 0;
  for (const auto& v : violations)
    for (const auto& c : v.columns) added += sys.add_suffix(c);
  return added;
}

// Adds to P one extension row per new class, in P order then symbol order.
template <Semifield K>
std::size_t apply_closure_fix(HankelSystem<K>& sys, const RowClasses<K>& cls) {
  std::vector<bool> taken(cls.representative.size(), false);
  std::vector<Word> fresh;
  for (std::size_t i = 0; i < sys.prefixes().size(); ++i)
    for (Symbol a = 0; a < sys.alphabet().size(); ++a) {
      std::size_t c = cls.class_of[sys.extension_row(i, a)];
      if (c < cls.prefix_classes || cls.null_class[c] || taken[c]) continue;
      taken[c] = true;
      fresh.push_back(append(sys.prefixes()[i], a));
    }
  for (const auto& p : fresh) sys.add_prefix(p);
  return fresh.size();
}

} // namespace detail

// Weighted L*: learns the minimal WDFSA of the oracle's language.
//
// The inner loop applies, in this order and until none applies: a consistency
// fix, a closure fix, a null-row repair. Then the null prefixes are dropped,
// the hypothesis is built and submitted. A counterexample adds all of its
// prefixes to P.
template <Semifield K>
LearnResult<K> lstar(Oracle<K>& oracle, const Alphabet& alphabet, const K& sf,
                     const LearnOptions<K>& opts = {}) {
  auto start = std::chrono::steady_clock::now();
  MemoizingOracle<K> memo(oracle);
  auto mq = [&memo](const Word& x) { return memo.membership(x); };
  HankelSystem<K> sys(sf, alphabet);
  LearnStats stats;

  auto tick = [&](std::size_t current_dim) {
    std::size_t cap = opts.max_iterations ? *opts.max_iterations : 10 * (current_dim + 1);
    if (stats.iterations >= cap)
      throw IterationCapExceeded("iteration cap of " + std::to_string(cap) + " reached");
    ++stats.iterations;
  };

  stats.cells_stamped += sys.complete(mq);
  stats.dim_history.push_back(dim(sys));

  while (true) {
    while (true) {
      auto cls = classify(sys);
      auto violations = consistency_violations(sys, cls);
      if (!violations.empty()) {
        tick(cls.dim);
        detail::apply_consistency_fix(sys, violations);
        stats.cells_stamped += sys.complete(mq);
        ++stats.consistency_fixes;
        stats.dim_history.push_back(dim(sys));
        continue;
      }
      if (is_closed(sys, cls)) {
        tick(cls.dim);
        detail::apply_closure_fix(sys, cls);
        stats.cells_stamped += sys.complete(mq);
        ++stats.closure_fixes;
        stats.dim_history.push_back(dim(sys));
        continue;
      }
      if (auto defect = find_null_row_defect(sys)) {
        for (const auto& s : defect->suffixes) sys.add_suffix(s);
        stats.cells_stamped += sys.complete(mq);
        ++stats.null_row_repairs;
        continue;
      }
      break;
    }

    auto reduced = drop_null_rows(sys);
    auto hypothesis = make_automaton(reduced);
    std::size_t current_dim = dim(reduced);
    stats.hypothesis_dims.push_back(current_dim);
    if (opts.on_break_line) opts.on_break_line(BreakLine<K>{sys, reduced, hypothesis});

    tick(current_dim);
    auto t = memo.equivalence(hypothesis);
    if (!t) {
      stats.ledger = memo.ledger();
      stats.wall_time = std::chrono::steady_clock::now() - start;
      return LearnResult<K>{std::move(hypothesis), std::move(sys), std::move(stats)};
    }

    sys.add_prefixes_of(*t);
    stats.cells_stamped += sys.complete(mq);
    const auto& observed = sys.value(*sys.row_of(*t), *sys.col_of({}));
    if (sf.equal(observed, evaluate(hypothesis, *t)))
      throw OracleInconsistent("counterexample '" + show_word(alphabet, *t) +
                               "' does not separate the hypothesis from the target");
    stats.counterexamples.push_back(std::move(*t));
  }
}

} // namespace wlstar
