#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wlstar/automaton.hpp"

namespace wlstar {

using Json = nlohmann::ordered_json;

// The on-disk automaton schema with weights still in text form. Binding to a
// semifield happens in build_wfsa / build_wdfsa.
struct AutomatonDoc {
  struct Weighted {
    State state = 0;
    std::string weight;
  };
  struct ArcDoc {
    State from = 0;
    std::string symbol;
    std::string weight;
    State to = 0;
  };

  SemifieldKind semifield = SemifieldKind::rational;
  std::vector<std::string> alphabet;
  std::size_t states = 0;
  std::optional<Weighted> initial;
  std::vector<Weighted> finals;
  std::vector<ArcDoc> arcs;
};

// Structural errors name the offending JSON location ("arcs[2].weight");
// syntax errors carry the line and column reported by the JSON reader.
AutomatonDoc doc_from_json(const Json& j);
AutomatonDoc parse_automaton(std::string_view text);
AutomatonDoc load_automaton(const std::string& path);
Json doc_to_json(const AutomatonDoc& doc);
std::string format_automaton(const AutomatonDoc& doc);

template <Semifield K>
Wfsa<K> build_wfsa(const AutomatonDoc& doc, const K& sf) {
  if (doc.semifield != parse_semifield_kind(K::name)) throw SemifieldMismatch();
  Alphabet alphabet(doc.alphabet);
  Wfsa<K> fsa(sf, alphabet, doc.states);
  auto weight = [&](const std::string& text, const std::string& where) {
    try {
      return sf.parse(text);
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  };
  if (doc.initial) fsa.set_initial(doc.initial->state, weight(doc.initial->weight, "initial.weight"));
  for (std::size_t i = 0; i < doc.finals.size(); ++i)
    fsa.set_final(doc.finals[i].state,
                  weight(doc.finals[i].weight, "finals[" + std::to_string(i) + "].weight"));
  for (std::size_t i = 0; i < doc.arcs.size(); ++i) {
    const auto& arc = doc.arcs[i];
    auto a = alphabet.find(arc.symbol);
    if (!a)
      throw ParseError("arcs[" + std::to_string(i) + "].symbol: '" + arc.symbol +
                       "' is not in the alphabet");
    fsa.add_arc(arc.from, *a, weight(arc.weight, "arcs[" + std::to_string(i) + "].weight"), arc.to);
  }
  return fsa;
}

template <Semifield K>
Wdfsa<K> build_wdfsa(const AutomatonDoc& doc, const K& sf) {
  return Wdfsa<K>(build_wfsa(doc, sf));
}

// Arcs are written by source state, then symbol.
template <Semifield K>
AutomatonDoc to_doc(const Wfsa<K>& a) {
  const K& sf = a.semifield();
  AutomatonDoc doc;
  doc.semifield = parse_semifield_kind(K::name);
  doc.alphabet = a.alphabet().names();
  doc.states = a.num_states();
  auto initials = a.initial_states();
  if (initials.size() > 1)
    throw NotDeterministic("the file format holds a single initial state");
  State q0 = initials.empty() ? 0 : initials.front();
  doc.initial = AutomatonDoc::Weighted{q0, sf.format(a.initial_weight(q0))};
  for (State q = 0; q < a.num_states(); ++q)
    if (!sf.is_zero(a.final_weight(q)))
      doc.finals.push_back({q, sf.format(a.final_weight(q))});
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (std::size_t idx : a.out_arcs(q)) {
        const auto& arc = a.arcs()[idx];
        if (arc.symbol == s)
          doc.arcs.push_back({q, a.alphabet().name(s), sf.format(arc.weight), arc.to});
      }
  return doc;
}

template <Semifield K>
AutomatonDoc to_doc(const Wdfsa<K>& a) {
  return to_doc(a.fsa());
}

// Graphviz rendering: states ascending, arcs labelled "symbol/weight", final
// states doubly circled, and a start arrow labelled with the initial weight.
template <Semifield K>
std::string to_dot(const Wfsa<K>& a) {
  const K& sf = a.semifield();
  std::ostringstream out;
  out << "digraph wfsa {\n  rankdir=LR;\n";
  for (State q = 0; q < a.num_states(); ++q) {
    bool final = !sf.is_zero(a.final_weight(q));
    out << "  q" << q << " [shape=" << (final ? "doublecircle" : "circle") << ", label=\"" << q;
    if (final) out << "\\n" << sf.format(a.final_weight(q));
    out << "\"];\n";
  }
  for (State q : a.initial_states()) {
    out << "  start" << q << " [shape=point];\n";
    out << "  start" << q << " -> q" << q << " [label=\"" << sf.format(a.initial_weight(q))
        << "\"];\n";
  }
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol s = 0; s < a.alphabet().size(); ++s)
      for (std::size_t idx : a.out_arcs(q)) {
        const auto& arc = a.arcs()[idx];
        if (arc.symbol != s) continue;
        out << "  q" << q << " -> q" << arc.to << " [label=\"" << a.alphabet().name(s) << "/"
            << sf.format(arc.weight) << "\"];\n";
      }
  out << "}\n";
  return out.str();
}

template <Semifield K>
std::string to_dot(const Wdfsa<K>& a) {
  return to_dot(a.fsa());
}

} // namespace wlstar
