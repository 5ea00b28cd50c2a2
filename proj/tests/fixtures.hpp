#pragma once

#include <string>
#include <vector>

#include "wlstar/wlstar.hpp"

namespace fx {

using namespace wlstar;
using Q = NonnegRational;

inline mpq_class q(const char* text) { return Q{}.parse(text); }

inline Word w(const Alphabet& sigma, const std::string& text) { return sigma.parse_word(text); }

inline Alphabet ab() { return Alphabet({"a", "b"}); }

// Two states over {a, b}: q0 loops on a and moves on b, q1 loops on a and
// returns on b.
inline Wfsa<Q> t1_fsa(const char* rho1 = "1/3") {
  Wfsa<Q> a(Q{}, ab(), 2);
  a.set_initial(0, q("1"));
  a.set_final(0, q("1/2"));
  a.set_final(1, q(rho1));
  a.add_arc(0, 0, q("1/4"), 0);
  a.add_arc(0, 1, q("1/4"), 1);
  a.add_arc(1, 0, q("1/3"), 1);
  a.add_arc(1, 1, q("1/3"), 0);
  return a;
}

inline Wdfsa<Q> t1(const char* rho1 = "1/3") { return Wdfsa<Q>(t1_fsa(rho1)); }

// Literal word enumeration: the first word of length <= depth, in shortlex
// order, where the two automata disagree.
template <Semifield K, class A, class B>
std::optional<Word> first_difference(const A& a, const B& b, std::size_t depth) {
  std::optional<Word> found;
  const K& sf = a.semifield();
  for_each_word_shortlex(a.alphabet().size(), depth, [&](const Word& x) {
    if (sf.equal(evaluate(a, x), evaluate(b, x))) return true;
    found = x;
    return false;
  });
  return found;
}

// Boolean DFA from a transition table (-1 for no arc) and accepting set.
inline Wdfsa<Boolean> dfa(const Alphabet& sigma, const std::vector<std::vector<int>>& delta,
                          const std::vector<bool>& accepting) {
  Wfsa<Boolean> a(Boolean{}, sigma, delta.size());
  a.set_initial(0, true);
  for (State s = 0; s < delta.size(); ++s) {
    a.set_final(s, accepting[s]);
    for (Symbol c = 0; c < sigma.size(); ++c)
      if (delta[s][c] >= 0) a.add_arc(s, c, true, static_cast<State>(delta[s][c]));
  }
  return Wdfsa<Boolean>(std::move(a));
}

} // namespace fx
