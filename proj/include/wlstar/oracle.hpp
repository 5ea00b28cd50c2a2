#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wlstar/equivalence.hpp"

namespace wlstar {

// The teacher: membership answers L(x); equivalence answers with a word on
// which the hypothesis is wrong, or nullopt when it is exact.
template <Semifield K>
class Oracle {
public:
  virtual ~Oracle() = default;
  virtual WeightOf<K> membership(const Word& x) = 0;
  virtual std::optional<Word> equivalence(const Wdfsa<K>& hypothesis) = 0;
};

namespace detail {

template <Semifield K>
Wdfsa<K> checked_target(const Wfsa<K>& target) {
  try {
    return Wdfsa<K>(target);
  } catch (const NotDeterministic& e) {
    throw NonDeterministicTarget(e.what());
  }
}

} // namespace detail

// Answers from a known target automaton, with exact equivalence checking.
template <Semifield K>
class ReferenceOracle : public Oracle<K> {
public:
  explicit ReferenceOracle(const Wfsa<K>& target) : target_(detail::checked_target(target)) {}
  explicit ReferenceOracle(Wdfsa<K> target) : target_(std::move(target)) {}

  WeightOf<K> membership(const Word& x) override { return evaluate(target_, x); }
  std::optional<Word> equivalence(const Wdfsa<K>& h) override { return equivalent(h, target_); }

  const Wdfsa<K>& target() const { return target_; }

private:
  Wdfsa<K> target_;
};

// Compares hypothesis and target on every word of length <= max_len and
// reports the first mismatch in shortlex order. Differences on longer words
// go unnoticed.
template <Semifield K>
class BruteforceOracle : public Oracle<K> {
public:
  BruteforceOracle(Wdfsa<K> target, std::size_t max_len)
      : target_(std::move(target)), max_len_(max_len) {}

  WeightOf<K> membership(const Word& x) override { return evaluate(target_, x); }

  // Level-by-level enumeration carrying both runs' forward weights. A word on
  // which neither automaton has a path is not extended.
  std::optional<Word> equivalence(const Wdfsa<K>& h) override {
    if (!(h.alphabet() == target_.alphabet())) throw AlphabetMismatch();
    const K& sf = target_.semifield();
    struct Run {
      Word word;
      std::optional<State> qh, qt;
      WeightOf<K> wh, wt;
    };
    auto start = [&](const Wdfsa<K>& a, std::optional<State>& q, WeightOf<K>& w) {
      if (!a.has_no_initial()) {
        q = a.initial();
        w = a.initial_weight();
      }
    };
    auto step = [&](const Wdfsa<K>& a, const std::optional<State>& q, const WeightOf<K>& w, Symbol s,
                    std::optional<State>& nq, WeightOf<K>& nw) {
      if (!q) return;
      if (const auto* t = a.next(*q, s)) {
        nq = t->to;
        nw = sf.times(w, t->weight);
      }
    };
    std::vector<Run> level(1);
    start(h, level[0].qh, level[0].wh);
    start(target_, level[0].qt, level[0].wt);
    for (std::size_t len = 0; !level.empty(); ++len) {
      for (const auto& r : level) {
        auto vh = r.qh ? sf.times(r.wh, h.final_weight(*r.qh)) : sf.zero();
        auto vt = r.qt ? sf.times(r.wt, target_.final_weight(*r.qt)) : sf.zero();
        if (!sf.equal(vh, vt)) return r.word;
      }
      if (len == max_len_) break;
      std::vector<Run> next;
      for (const auto& r : level)
        for (Symbol s = 0; s < target_.alphabet().size(); ++s) {
          Run n{append(r.word, s), std::nullopt, std::nullopt, {}, {}};
          step(h, r.qh, r.wh, s, n.qh, n.wh);
          step(target_, r.qt, r.wt, s, n.qt, n.wt);
          if (n.qh || n.qt) next.push_back(std::move(n));
        }
      level = std::move(next);
    }
    return std::nullopt;
  }

  std::size_t max_len() const { return max_len_; }

private:
  Wdfsa<K> target_;
  std::size_t max_len_;
};

struct QueryLedger {
  std::size_t membership_count = 0;
  std::size_t equivalence_count = 0;
  std::size_t distinct_membership_count = 0;
};

// Caches membership answers by word and counts every query. Membership may be
// called from several threads.
template <Semifield K>
class MemoizingOracle : public Oracle<K> {
public:
  explicit MemoizingOracle(Oracle<K>& inner) : inner_(inner) {}

  WeightOf<K> membership(const Word& x) override {
    {
      std::lock_guard lock(mutex_);
      ++ledger_.membership_count;
      auto it = cache_.find(x);
      if (it != cache_.end()) return it->second;
    }
    WeightOf<K> w = inner_.membership(x);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = cache_.emplace(x, std::move(w));
    if (inserted) ++ledger_.distinct_membership_count;
    return it->second;
  }

  std::optional<Word> equivalence(const Wdfsa<K>& h) override {
    {
      std::lock_guard lock(mutex_);
      ++ledger_.equivalence_count;
    }
    return inner_.equivalence(h);
  }

  QueryLedger ledger() const {
    std::lock_guard lock(mutex_);
    return ledger_;
  }

private:
  Oracle<K>& inner_;
  mutable std::mutex mutex_;
  QueryLedger ledger_;
  std::unordered_map<Word, WeightOf<K>, WordHash> cache_;
};

} // namespace wlstar
