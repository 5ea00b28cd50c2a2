#include "wlstar/automaton_io.hpp"

#include <fstream>
#include <iterator>

namespace wlstar {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string join(const std::string& where, const char* key) {
  return where.empty() ? std::string(key) : where + "." + key;
}

std::string as_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(join(where, key) + ": expected a string");
  return v.get<std::string>();
}

State as_state(const Json& obj, const char* key, const std::string& where, std::size_t states) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_unsigned())
    throw ParseError(join(where, key) + ": expected a non-negative integer");
  auto q = v.get<std::uint64_t>();
  if (q >= states)
    throw ParseError(join(where, key) + ": state " + std::to_string(q) + " is out of range");
  return static_cast<State>(q);
}

} // namespace

AutomatonDoc doc_from_json(const Json& j) {
  AutomatonDoc doc;
  if (!j.is_object()) throw ParseError("document: expected an object");
  doc.semifield = parse_semifield_kind(as_string(j, "semifield", ""));

  const Json& alphabet = field(j, "alphabet", "");
  if (!alphabet.is_array() || alphabet.empty())
    throw ParseError("alphabet: expected a non-empty list of symbols");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!alphabet[i].is_string())
      throw ParseError("alphabet[" + std::to_string(i) + "]: expected a string");
    doc.alphabet.push_back(alphabet[i].get<std::string>());
  }
  try {
    Alphabet check(doc.alphabet);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("alphabet: ") + e.what());
  }

  const Json& states = field(j, "states", "");
  if (!states.is_number_unsigned() || states.get<std::uint64_t>() == 0)
    throw ParseError("states: expected a positive integer");
  doc.states = states.get<std::size_t>();

  if (j.contains("initial")) {
    const Json& init = j["initial"];
    doc.initial = AutomatonDoc::Weighted{as_state(init, "state", "initial", doc.states),
                                         as_string(init, "weight", "initial")};
  }

  if (j.contains("finals")) {
    const Json& finals = j["finals"];
    if (!finals.is_array()) throw ParseError("finals: expected a list");
    for (std::size_t i = 0; i < finals.size(); ++i) {
      std::string where = "finals[" + std::to_string(i) + "]";
      doc.finals.push_back({as_state(finals[i], "state", where, doc.states),
                            as_string(finals[i], "weight", where)});
    }
  }

  if (j.contains("arcs")) {
    const Json& arcs = j["arcs"];
    if (!arcs.is_array()) throw ParseError("arcs: expected a list");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      std::string where = "arcs[" + std::to_string(i) + "]";
      AutomatonDoc::ArcDoc arc;
      arc.from = as_state(arcs[i], "from", where, doc.states);
      arc.symbol = as_string(arcs[i], "symbol", where);
      arc.weight = as_string(arcs[i], "weight", where);
      arc.to = as_state(arcs[i], "to", where, doc.states);
      doc.arcs.push_back(std::move(arc));
    }
  }
  return doc;
}

AutomatonDoc parse_automaton(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    throw ParseError("malformed automaton at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return doc_from_json(j);
}

AutomatonDoc load_automaton(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_automaton(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Json doc_to_json(const AutomatonDoc& doc) {
  Json j;
  j["semifield"] = std::string(semifield_name(doc.semifield));
  j["alphabet"] = doc.alphabet;
  j["states"] = doc.states;
  if (doc.initial) j["initial"] = {{"state", doc.initial->state}, {"weight", doc.initial->weight}};
  Json finals = Json::array();
  for (const auto& f : doc.finals) finals.push_back({{"state", f.state}, {"weight", f.weight}});
  j["finals"] = std::move(finals);
  Json arcs = Json::array();
  for (const auto& a : doc.arcs)
    arcs.push_back({{"from", a.from}, {"symbol", a.symbol}, {"weight", a.weight}, {"to", a.to}});
  j["arcs"] = std::move(arcs);
  return j;
}

std::string format_automaton(const AutomatonDoc& doc) {
  return doc_to_json(doc).dump(2) + "\n";
}

} // namespace wlstar
