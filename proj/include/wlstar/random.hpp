#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wlstar/automaton.hpp"

namespace wlstar {

// Nonzero weights. Only raw mt19937_64 output is used so that fixtures are
// identical across standard libraries.
inline bool random_weight(const Boolean&, std::mt19937_64&) { return true; }

inline mpq_class random_weight(const NonnegRational&, std::mt19937_64& rng) {
  unsigned long p = 1 + rng() % 9;
  unsigned long q = 1 + rng() % 9;
  mpq_class w(p, q);
  w.canonicalize();
  return w;
}

inline double random_weight(const NonnegReal&, std::mt19937_64& rng) {
  return static_cast<double>(100 + rng() % 901) / 1000.0;
}

// Small integers keep min-plus arithmetic exact.
inline double random_weight(const MinPlus&, std::mt19937_64& rng) {
  return static_cast<double>(rng() % 10);
}

// A trimmed WDFSA with n states over `alphabet`. State 0 is initial and every
// state is reachable through a random spanning tree; further arcs are added
// with probability 7/10 per free (state, symbol) slot. The initial state
// always has a nonzero final weight; any state left without a path to a final
// state is made final.
template <Semifield K>
Wdfsa<K> random_wdfsa(std::size_t n, const Alphabet& alphabet, std::uint64_t seed, const K& sf) {
  if (n == 0) throw InvalidArgument("random automaton needs at least one state");
  if (alphabet.empty()) throw InvalidArgument("random automaton needs a non-empty alphabet");
  std::mt19937_64 rng(seed);
  const std::size_t sigma = alphabet.size();
  Wfsa<K> fsa(sf, alphabet, n);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(sigma, false));

  fsa.set_initial(0, random_weight(sf, rng));
  for (State q = 1; q < n; ++q) {
    std::vector<State> open;
    for (State p = 0; p < q; ++p)
      for (Symbol a = 0; a < sigma; ++a)
        if (!used[p][a]) {
          open.push_back(p);
          break;
        }
    State parent = open[rng() % open.size()];
    std::vector<Symbol> free;
    for (Symbol a = 0; a < sigma; ++a)
      if (!used[parent][a]) free.push_back(a);
    Symbol a = free[rng() % free.size()];
    used[parent][a] = true;
    fsa.add_arc(parent, a, random_weight(sf, rng), q);
  }
  for (State p = 0; p < n; ++p)
    for (Symbol a = 0; a < sigma; ++a) {
      if (used[p][a]) continue;
      if (rng() % 10 < 7) {
        State to = static_cast<State>(rng() % n);
        used[p][a] = true;
        fsa.add_arc(p, a, random_weight(sf, rng), to);
      }
    }

  fsa.set_final(0, random_weight(sf, rng));
  for (State q = 1; q < n; ++q)
    if (rng() % 2 == 0) fsa.set_final(q, random_weight(sf, rng));
  while (true) {
    auto coacc = detail::coaccessible_states(fsa);
    State missing = 0;
    bool any = false;
    for (State q = 0; q < n && !any; ++q)
      if (!coacc[q]) {
        missing = q;
        any = true;
      }
    if (!any) break;
    fsa.set_final(missing, random_weight(sf, rng));
  }
  return Wdfsa<K>(std::move(fsa));
}

} // namespace wlstar
