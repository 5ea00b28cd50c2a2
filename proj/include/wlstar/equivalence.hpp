#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "wlstar/automaton.hpp"

namespace wlstar {

// Shortest, then lexicographically least, word on which the two automata
// disagree, or nullopt when they generate the same language.
//
// Words are explored breadth-first in shortlex order. Each word reaches a
// configuration: the state of each side (or none once a side has no path) and,
// when both sides are alive, the ratio k of their accumulated weights. Two
// words reaching the same configuration have the same future, so the later one
// is pruned. Sides where only one automaton is alive depend on the state alone.
template <Semifield K>
std::optional<Word> equivalent(const Wdfsa<K>& lhs, const Wdfsa<K>& rhs) {
  if (!(lhs.alphabet() == rhs.alphabet())) throw AlphabetMismatch();
  if (!(lhs.semifield() == rhs.semifield())) throw SemifieldMismatch();
  const Wdfsa<K> a = trim(lhs);
  const Wdfsa<K> b = trim(rhs);
  const K& sf = a.semifield();
  const std::size_t sigma = a.alphabet().size();
  using Weight = WeightOf<K>;

  struct Node {
    std::optional<State> qa;
    std::optional<State> qb;
    Weight fa;
    Weight fb;
    Word word;
  };

  std::vector<std::vector<std::vector<Weight>>> ratios(
      a.num_states(), std::vector<std::vector<Weight>>(b.num_states()));
  std::vector<bool> seen_a(a.num_states(), false);
  std::vector<bool> seen_b(b.num_states(), false);

  // Returns false if the configuration was already explored.
  auto visit = [&](const Node& n) {
    if (n.qa && n.qb) {
      Weight k = sf.divide(n.fa, n.fb);
      auto& known = ratios[*n.qa][*n.qb];
      for (const auto& r : known)
        if (sf.equal(r, k)) return false;
      known.push_back(std::move(k));
      return true;
    }
    if (n.qa) {
      if (seen_a[*n.qa]) return false;
      seen_a[*n.qa] = true;
      return true;
    }
    if (n.qb) {
      if (seen_b[*n.qb]) return false;
      seen_b[*n.qb] = true;
      return true;
    }
    return false;
  };

  Node start{std::nullopt, std::nullopt, sf.one(), sf.one(), {}};
  if (!a.has_no_initial()) {
    start.qa = a.initial();
    start.fa = a.initial_weight();
  }
  if (!b.has_no_initial()) {
    start.qb = b.initial();
    start.fb = b.initial_weight();
  }

  std::deque<Node> queue;
  if (visit(start)) queue.push_back(std::move(start));
  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();
    Weight wa = n.qa ? sf.times(n.fa, a.final_weight(*n.qa)) : sf.zero();
    Weight wb = n.qb ? sf.times(n.fb, b.final_weight(*n.qb)) : sf.zero();
    if (!sf.equal(wa, wb)) return n.word;
    for (Symbol s = 0; s < sigma; ++s) {
      Node m{std::nullopt, std::nullopt, sf.one(), sf.one(), append(n.word, s)};
      if (n.qa)
        if (const auto* t = a.next(*n.qa, s)) {
          m.qa = t->to;
          m.fa = sf.times(n.fa, t->weight);
        }
      if (n.qb)
        if (const auto* t = b.next(*n.qb, s)) {
          m.qb = t->to;
          m.fb = sf.times(n.fb, t->weight);
        }
      if (visit(m)) queue.push_back(std::move(m));
    }
  }
  return std::nullopt;
}

// How the right languages of two states relate on all suffixes up to some
// length: not homothetic, both identically zero, or related by a constant.
template <Semifield K>
struct Homothety {
  enum class Kind { none, zero, scaled };
  Kind kind = Kind::zero;
  WeightOf<K> k{};
};

// rel[p][q] describes R_p versus R_q on suffixes of length <= depth, where R_q
// is the right language of state q. R_p = k ⊗ R_q when kind is scaled.
template <Semifield K>
std::vector<std::vector<Homothety<K>>> right_language_homothety(const Wdfsa<K>& a,
                                                               std::size_t depth) {
  using H = Homothety<K>;
  const K& sf = a.semifield();
  const std::size_t n = a.num_states();
  const std::size_t sigma = a.alphabet().size();

  // zero[q]: R_q vanishes on suffixes of length <= current depth.
  std::vector<bool> zero(n);
  std::vector<std::vector<H>> rel(n, std::vector<H>(n));

  auto meet = [&](H x, const H& y) -> H {
    if (x.kind == H::Kind::none || y.kind == H::Kind::zero) return x;
    if (y.kind == H::Kind::none || x.kind == H::Kind::zero) return y;
    if (sf.equal(x.k, y.k)) return x;
    return H{H::Kind::none, {}};
  };
  auto base = [&](State p, State q) -> H {
    const auto& rp = a.final_weight(p);
    const auto& rq = a.final_weight(q);
    bool zp = sf.is_zero(rp), zq = sf.is_zero(rq);
    if (zp && zq) return H{H::Kind::zero, {}};
    if (zp || zq) return H{H::Kind::none, {}};
    return H{H::Kind::scaled, sf.divide(rp, rq)};
  };

  for (State q = 0; q < n; ++q) zero[q] = sf.is_zero(a.final_weight(q));
  for (State p = 0; p < n; ++p)
    for (State q = 0; q < n; ++q) rel[p][q] = base(p, q);

  for (std::size_t r = 1; r <= depth; ++r) {
    std::vector<bool> next_zero(n);
    std::vector<std::vector<H>> next(n, std::vector<H>(n));
    for (State q = 0; q < n; ++q) {
      bool z = sf.is_zero(a.final_weight(q));
      for (Symbol s = 0; s < sigma && z; ++s)
        if (const auto* t = a.next(q, s)) z = zero[t->to];
      next_zero[q] = z;
    }
    for (State p = 0; p < n; ++p)
      for (State q = 0; q < n; ++q) {
        H acc = base(p, q);
        for (Symbol s = 0; s < sigma && acc.kind != H::Kind::none; ++s) {
          const auto* tp = a.next(p, s);
          const auto* tq = a.next(q, s);
          H step;
          if (!tp && !tq) {
            step = H{H::Kind::zero, {}};
          } else if (!tp || !tq) {
            State other = tp ? tp->to : tq->to;
            step = zero[other] ? H{H::Kind::zero, {}} : H{H::Kind::none, {}};
          } else {
            const H& sub = rel[tp->to][tq->to];
            if (sub.kind == H::Kind::scaled)
              step = H{H::Kind::scaled, sf.divide(sf.times(sub.k, tp->weight), tq->weight)};
            else
              step = sub;
          }
          acc = meet(acc, step);
        }
        next[p][q] = acc;
      }
    zero = std::move(next_zero);
    rel = std::move(next);
  }
  return rel;
}

// Number of classes of support prefixes of length <= depth under homothetic
// equivalence of their right languages restricted to suffixes of length
// <= depth. A lower bound on the size of a minimal equivalent WDFSA, exact once
// depth >= 2|Q|. The zero language has no support and yields 0.
template <Semifield K>
std::size_t minimal_state_count_bruteforce(const Wdfsa<K>& target, std::size_t depth) {
  const Wdfsa<K> a = trim(target);
  if (a.has_no_initial()) return 0;
  // States reached by some prefix of length <= depth. After trimming every
  // state is coaccessible, so each such prefix is in the support.
  std::vector<std::optional<std::size_t>> dist(a.num_states());
  std::deque<State> queue{a.initial()};
  dist[a.initial()] = 0;
  std::vector<State> reached;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    reached.push_back(q);
    if (*dist[q] == depth) continue;
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      if (const auto* t = a.next(q, s))
        if (!dist[t->to]) {
          dist[t->to] = *dist[q] + 1;
          queue.push_back(t->to);
        }
  }
  auto rel = right_language_homothety(a, depth);
  std::vector<State> reps;
  for (State q : reached) {
    bool fresh = true;
    for (State r : reps)
      if (rel[q][r].kind != Homothety<K>::Kind::none) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(q);
  }
  return reps.size();
}

} // namespace wlstar
