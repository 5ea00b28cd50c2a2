#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wlstar {

// Symbols are dense indices into an Alphabet, in declaration order.
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Symbol s : w) {
      h ^= s + 1;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Word concat(const Word& x, const Word& y) {
  Word out;
  out.reserve(x.size() + y.size());
  out.insert(out.end(), x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

inline Word append(Word x, Symbol a) {
  x.push_back(a);
  return x;
}

inline Word prepend(Symbol a, const Word& x) {
  Word out;
  out.reserve(x.size() + 1);
  out.push_back(a);
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

// Length first, then lexicographic by symbol index.
inline bool shortlex_less(const Word& x, const Word& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

// Ordered, duplicate-free set of symbol names.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::string& name(Symbol a) const { return symbols_.at(a); }
  const std::vector<std::string>& names() const { return symbols_; }
  std::optional<Symbol> find(std::string_view name) const;

  // Single-character alphabets read one symbol per character; otherwise the
  // text is split on whitespace. The empty text is the empty word.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;

  // "a", "b", ... for the first 26 symbols, then "s26", "s27", ...
  static Alphabet letters(std::size_t n);

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
  bool single_char() const;

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

// Calls f(word) on every word over {0..sigma-1} with length <= max_len, in
// shortlex order. Stops early when f returns false.
template <class F>
void for_each_word_shortlex(std::size_t sigma, std::size_t max_len, F&& f) {
  Word w;
  if (!f(static_cast<const Word&>(w))) return;
  if (sigma == 0) return;
  for (std::size_t len = 1; len <= max_len; ++len) {
    w.assign(len, 0);
    while (true) {
      if (!f(static_cast<const Word&>(w))) return;
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == sigma) {
        w[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
      ++w[i - 1];
    }
  }
}

} // namespace wlstar
