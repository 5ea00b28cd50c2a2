#include "wlstar/word.hpp"

#include <cctype>

#include "wlstar/error.hpp"

namespace wlstar {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto& s = symbols_[i];
    if (s.empty()) throw InvalidArgument("alphabet symbols must be non-empty");
    for (char c : s)
      if (std::isspace(static_cast<unsigned char>(c)))
        throw InvalidArgument("alphabet symbol '" + s + "' contains whitespace");
    if (!index_.emplace(s, static_cast<Symbol>(i)).second)
      throw InvalidArgument("duplicate alphabet symbol '" + s + "'");
  }
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::single_char() const {
  for (const auto& s : symbols_)
    if (s.size() != 1) return false;
  return true;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word w;
  auto push = [&](std::string_view token) {
    auto a = find(token);
    if (!a) throw UnknownSymbol("symbol '" + std::string(token) + "' is not in the alphabet");
    w.push_back(*a);
  };
  if (single_char()) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      push(std::string_view(&c, 1));
    }
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) push(text.substr(i, j - i));
    i = j;
  }
  return w;
}

std::string Alphabet::format_word(const Word& w) const {
  std::string out;
  bool spaced = !single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i > 0) out += ' ';
    out += name(w[i]);
  }
  return out;
}

Alphabet Alphabet::letters(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
  return Alphabet(std::move(names));
}

} // namespace wlstar
