#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlstar/error.hpp"
#include "wlstar/semifield.hpp"
#include "wlstar/word.hpp"

namespace wlstar {

using State = std::uint32_t;

template <Semifield K>
struct Arc {
  State from;
  Symbol symbol;
  WeightOf<K> weight;
  State to;
};

// A weighted finite-state automaton without ε-arcs. Arcs of weight zero are
// never stored.
template <Semifield K>
class Wfsa {
public:
  using Weight = WeightOf<K>;

  Wfsa(K sf, Alphabet alphabet, std::size_t num_states = 0)
      : sf_(std::move(sf)), alphabet_(std::move(alphabet)) {
    for (std::size_t i = 0; i < num_states; ++i) add_state();
  }

  State add_state() {
    lambda_.push_back(sf_.zero());
    rho_.push_back(sf_.zero());
    out_.emplace_back();
    return static_cast<State>(lambda_.size() - 1);
  }

  void add_arc(State from, Symbol a, Weight w, State to) {
    check_state(from);
    check_state(to);
    if (a >= alphabet_.size())
      throw UnknownSymbol("arc symbol index " + std::to_string(a) + " is outside the alphabet");
    if (sf_.is_zero(w)) return;
    out_[from].push_back(arcs_.size());
    arcs_.push_back(Arc<K>{from, a, std::move(w), to});
  }

  void set_initial(State q, Weight w) {
    check_state(q);
    lambda_[q] = std::move(w);
  }
  void set_final(State q, Weight w) {
    check_state(q);
    rho_[q] = std::move(w);
  }

  const K& semifield() const { return sf_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return lambda_.size(); }
  const std::vector<Arc<K>>& arcs() const { return arcs_; }
  // Indices into arcs() of the arcs leaving q, in insertion order.
  const std::vector<std::size_t>& out_arcs(State q) const { return out_.at(q); }
  Weight initial_weight(State q) const { return lambda_.at(q); }
  Weight final_weight(State q) const { return rho_.at(q); }

  std::vector<State> initial_states() const {
    std::vector<State> out;
    for (State q = 0; q < num_states(); ++q)
      if (!sf_.is_zero(lambda_[q])) out.push_back(q);
    return out;
  }

private:
  void check_state(State q) const {
    if (q >= num_states())
      throw InvalidArgument("state " + std::to_string(q) + " is out of range");
  }

  K sf_;
  Alphabet alphabet_;
  std::vector<Weight> lambda_;
  std::vector<Weight> rho_;
  std::vector<Arc<K>> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

// A deterministic WFSA: at most one arc per (state, symbol) and a single
// initial state. The canonical empty automaton has one state with zero
// initial and final weight and no arcs.
template <Semifield K>
class Wdfsa {
public:
  using Weight = WeightOf<K>;

  struct Transition {
    Weight weight;
    State to;
  };

  explicit Wdfsa(Wfsa<K> fsa) : fsa_(std::move(fsa)) {
    if (fsa_.num_states() == 0) fsa_.add_state();
    auto initials = fsa_.initial_states();
    if (initials.size() > 1)
      throw NotDeterministic("automaton has " + std::to_string(initials.size()) +
                             " states with nonzero initial weight");
    initial_ = initials.empty() ? 0 : initials.front();
    const std::size_t sigma = fsa_.alphabet().size();
    delta_.assign(fsa_.num_states() * sigma, std::nullopt);
    for (const auto& arc : fsa_.arcs()) {
      auto& slot = delta_[arc.from * sigma + arc.symbol];
      if (slot)
        throw NotDeterministic("state " + std::to_string(arc.from) + " has two arcs on symbol '" +
                               fsa_.alphabet().name(arc.symbol) + "'");
      slot = Transition{arc.weight, arc.to};
    }
  }

  static Wdfsa empty(K sf, Alphabet alphabet) {
    return Wdfsa(Wfsa<K>(std::move(sf), std::move(alphabet), 1));
  }

  const Wfsa<K>& fsa() const { return fsa_; }
  const K& semifield() const { return fsa_.semifield(); }
  const Alphabet& alphabet() const { return fsa_.alphabet(); }
  std::size_t num_states() const { return fsa_.num_states(); }
  State initial() const { return initial_; }
  Weight initial_weight() const { return fsa_.initial_weight(initial_); }
  Weight final_weight(State q) const { return fsa_.final_weight(q); }

  // True when no state carries initial weight, i.e. the language is zero.
  bool has_no_initial() const { return semifield().is_zero(initial_weight()); }

  const Transition* next(State q, Symbol a) const {
    const auto& slot = delta_.at(q * alphabet().size() + a);
    return slot ? &*slot : nullptr;
  }

private:
  Wfsa<K> fsa_;
  State initial_ = 0;
  std::vector<std::optional<Transition>> delta_;
};

template <Semifield K>
struct PathRecord {
  std::vector<State> states; // q_0 ... q_N
  Word yield;
  WeightOf<K> weight; // product of the arc weights
};

namespace detail {

inline void check_word(const Alphabet& alphabet, const Word& x) {
  for (Symbol a : x)
    if (a >= alphabet.size())
      throw UnknownSymbol("symbol index " + std::to_string(a) + " is outside the alphabet");
}

} // namespace detail

// ⊕ over all paths yielding x of λ(first) ⊗ w(path) ⊗ ρ(last).
template <Semifield K>
WeightOf<K> evaluate(const Wfsa<K>& a, const Word& x) {
  detail::check_word(a.alphabet(), x);
  const K& sf = a.semifield();
  std::vector<WeightOf<K>> forward(a.num_states(), sf.zero());
  for (State q = 0; q < a.num_states(); ++q) forward[q] = a.initial_weight(q);
  for (Symbol sym : x) {
    std::vector<WeightOf<K>> next(a.num_states(), sf.zero());
    for (State q = 0; q < a.num_states(); ++q) {
      if (sf.is_zero(forward[q])) continue;
      for (std::size_t idx : a.out_arcs(q)) {
        const auto& arc = a.arcs()[idx];
        if (arc.symbol != sym) continue;
        next[arc.to] = sf.plus(next[arc.to], sf.times(forward[q], arc.weight));
      }
    }
    forward = std::move(next);
  }
  WeightOf<K> total = sf.zero();
  for (State q = 0; q < a.num_states(); ++q)
    if (!sf.is_zero(forward[q])) total = sf.plus(total, sf.times(forward[q], a.final_weight(q)));
  return total;
}

template <Semifield K>
WeightOf<K> evaluate(const Wdfsa<K>& a, const Word& x) {
  detail::check_word(a.alphabet(), x);
  const K& sf = a.semifield();
  if (a.has_no_initial()) return sf.zero();
  State q = a.initial();
  WeightOf<K> w = a.initial_weight();
  for (Symbol sym : x) {
    const auto* t = a.next(q, sym);
    if (!t) return sf.zero();
    w = sf.times(w, t->weight);
    q = t->to;
  }
  return sf.times(w, a.final_weight(q));
}

// Every path with yield x that starts in a state with nonzero initial weight,
// ordered by start state, then by the successor state at each step.
template <Semifield K>
std::vector<PathRecord<K>> paths_yielding(const Wfsa<K>& a, const Word& x) {
  detail::check_word(a.alphabet(), x);
  const K& sf = a.semifield();
  std::vector<PathRecord<K>> out;
  std::vector<State> states;
  auto walk = [&](auto&& self, std::size_t depth, const WeightOf<K>& w) -> void {
    if (depth == x.size()) {
      out.push_back(PathRecord<K>{states, x, w});
      return;
    }
    std::vector<const Arc<K>*> step;
    for (std::size_t idx : a.out_arcs(states.back()))
      if (a.arcs()[idx].symbol == x[depth]) step.push_back(&a.arcs()[idx]);
    std::stable_sort(step.begin(), step.end(),
                     [](const Arc<K>* l, const Arc<K>* r) { return l->to < r->to; });
    for (const Arc<K>* arc : step) {
      states.push_back(arc->to);
      self(self, depth + 1, sf.times(w, arc->weight));
      states.pop_back();
    }
  };
  for (State q : a.initial_states()) {
    states.assign(1, q);
    walk(walk, 0, sf.one());
  }
  return out;
}

namespace detail {

template <Semifield K>
std::vector<bool> accessible_states(const Wfsa<K>& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::deque<State> queue;
  for (State q : a.initial_states()) {
    seen[q] = true;
    queue.push_back(q);
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (std::size_t idx : a.out_arcs(q)) {
      State r = a.arcs()[idx].to;
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(r);
      }
    }
  }
  return seen;
}

template <Semifield K>
std::vector<bool> coaccessible_states(const Wfsa<K>& a) {
  std::vector<std::vector<State>> in(a.num_states());
  for (const auto& arc : a.arcs()) in[arc.to].push_back(arc.from);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<State> queue;
  for (State q = 0; q < a.num_states(); ++q)
    if (!a.semifield().is_zero(a.final_weight(q))) {
      seen[q] = true;
      queue.push_back(q);
    }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (State p : in[q])
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
  }
  return seen;
}

} // namespace detail

// Restriction to the states that are both accessible and coaccessible,
// renumbered in ascending order. Returns the canonical empty automaton when
// no such state exists.
template <Semifield K>
Wfsa<K> trim(const Wfsa<K>& a) {
  auto acc = detail::accessible_states(a);
  auto coacc = detail::coaccessible_states(a);
  std::vector<std::optional<State>> renum(a.num_states());
  Wfsa<K> out(a.semifield(), a.alphabet());
  for (State q = 0; q < a.num_states(); ++q)
    if (acc[q] && coacc[q]) {
      renum[q] = out.add_state();
      out.set_initial(*renum[q], a.initial_weight(q));
      out.set_final(*renum[q], a.final_weight(q));
    }
  if (out.num_states() == 0) return Wfsa<K>(a.semifield(), a.alphabet(), 1);
  for (const auto& arc : a.arcs())
    if (renum[arc.from] && renum[arc.to])
      out.add_arc(*renum[arc.from], arc.symbol, arc.weight, *renum[arc.to]);
  return out;
}

template <Semifield K>
Wdfsa<K> trim(const Wdfsa<K>& a) {
  return Wdfsa<K>(trim(a.fsa()));
}

// A partition of the states {0..n-1}. Block ids are numbered in order of
// their smallest member.
class StatePartition {
public:
  explicit StatePartition(const std::vector<std::size_t>& labels) {
    std::map<std::size_t, std::size_t> relabel;
    block_of_.reserve(labels.size());
    for (std::size_t label : labels) {
      auto [it, inserted] = relabel.emplace(label, blocks_.size());
      if (inserted) blocks_.emplace_back();
      block_of_.push_back(it->second);
      blocks_[it->second].push_back(static_cast<State>(block_of_.size() - 1));
    }
  }

  static StatePartition identity(std::size_t n) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i;
    return StatePartition(labels);
  }

  static StatePartition from_blocks(const std::vector<std::vector<State>>& blocks, std::size_t n) {
    std::vector<std::size_t> labels(n, SIZE_MAX);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (State q : blocks[b]) {
        if (q >= n) throw InvalidArgument("partition mentions unknown state " + std::to_string(q));
        if (labels[q] != SIZE_MAX)
          throw InvalidArgument("state " + std::to_string(q) + " appears in two blocks");
        labels[q] = b;
      }
    for (std::size_t q = 0; q < n; ++q)
      if (labels[q] == SIZE_MAX)
        throw InvalidArgument("partition does not cover state " + std::to_string(q));
    return StatePartition(labels);
  }

  std::size_t num_states() const { return block_of_.size(); }
  std::size_t num_blocks() const { return blocks_.size(); }
  std::size_t block_of(State q) const { return block_of_.at(q); }
  const std::vector<std::vector<State>>& blocks() const { return blocks_; }

private:
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<State>> blocks_;
};

struct RegularityViolation {
  enum class Kind { missing_arc, arc_weight, target_block, initial_weight, final_weight };

  Kind kind;
  State p;
  State q;
  std::optional<Symbol> symbol;

  std::string describe() const {
    std::string what;
    switch (kind) {
    case Kind::missing_arc: what = "arc of p has no matching arc from q"; break;
    case Kind::arc_weight: what = "matching arcs carry different weights"; break;
    case Kind::target_block: what = "arcs of p on one symbol reach different blocks"; break;
    case Kind::initial_weight: what = "initial weights differ"; break;
    case Kind::final_weight: what = "final weights differ"; break;
    }
    std::string out = what + " (p=" + std::to_string(p) + ", q=" + std::to_string(q);
    if (symbol) out += ", symbol=" + std::to_string(*symbol);
    return out + ")";
  }
};

// First violation of transition-regularity for `part`, or nullopt. Within a
// block, final weights must agree, matching arcs must reach the same state
// with equal weight, and all arcs of a state on one symbol must land in one
// block. Only nonzero initial weights are compared: a state with zero initial
// weight imposes no constraint on its block.
template <Semifield K>
std::optional<RegularityViolation> find_regularity_violation(const Wfsa<K>& a,
                                                            const StatePartition& part) {
  if (part.num_states() != a.num_states())
    throw InvalidArgument("partition size does not match the automaton");
  using Kind = RegularityViolation::Kind;
  const K& sf = a.semifield();
  for (const auto& block : part.blocks()) {
    for (State p : block) {
      for (State q : block) {
        if (p == q) continue;
        const auto& lp = a.initial_weight(p);
        const auto& lq = a.initial_weight(q);
        if (!sf.is_zero(lp) && !sf.is_zero(lq) && !sf.equal(lp, lq))
          return RegularityViolation{Kind::initial_weight, p, q, std::nullopt};
        if (!sf.equal(a.final_weight(p), a.final_weight(q)))
          return RegularityViolation{Kind::final_weight, p, q, std::nullopt};
        for (std::size_t i : a.out_arcs(p)) {
          const auto& arc = a.arcs()[i];
          bool found = false;
          bool same_weight = false;
          for (std::size_t j : a.out_arcs(q)) {
            const auto& other = a.arcs()[j];
            if (other.symbol != arc.symbol || other.to != arc.to) continue;
            found = true;
            if (sf.equal(other.weight, arc.weight)) same_weight = true;
          }
          if (!found) return RegularityViolation{Kind::missing_arc, p, q, arc.symbol};
          if (!same_weight) return RegularityViolation{Kind::arc_weight, p, q, arc.symbol};
        }
      }
      for (std::size_t i : a.out_arcs(p))
        for (std::size_t j : a.out_arcs(p)) {
          const auto& x = a.arcs()[i];
          const auto& y = a.arcs()[j];
          if (x.symbol == y.symbol && part.block_of(x.to) != part.block_of(y.to))
            return RegularityViolation{Kind::target_block, p, p, x.symbol};
        }
    }
  }
  return std::nullopt;
}

template <Semifield K>
bool is_transition_regular(const Wfsa<K>& a, const StatePartition& part) {
  return !find_regularity_violation(a, part).has_value();
}

// The automaton on the blocks of a transition-regular partition.
template <Semifield K>
Wfsa<K> quotient(const Wfsa<K>& a, const StatePartition& part) {
  if (auto v = find_regularity_violation(a, part))
    throw NotTransitionRegular("partition is not transition-regular: " + v->describe());
  const K& sf = a.semifield();
  Wfsa<K> out(sf, a.alphabet(), part.num_blocks());
  for (std::size_t b = 0; b < part.num_blocks(); ++b) {
    const auto& members = part.blocks()[b];
    out.set_final(static_cast<State>(b), a.final_weight(members.front()));
    for (State q : members)
      if (!sf.is_zero(a.initial_weight(q))) {
        out.set_initial(static_cast<State>(b), a.initial_weight(q));
        break;
      }
  }
  const std::size_t sigma = a.alphabet().size();
  std::vector<bool> placed(part.num_blocks() * sigma, false);
  for (const auto& arc : a.arcs()) {
    std::size_t from = part.block_of(arc.from);
    if (placed[from * sigma + arc.symbol]) continue;
    placed[from * sigma + arc.symbol] = true;
    out.add_arc(static_cast<State>(from), arc.symbol, arc.weight,
                static_cast<State>(part.block_of(arc.to)));
  }
  return out;
}

} // namespace wlstar
