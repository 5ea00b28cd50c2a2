#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wlstar/automaton.hpp"

namespace wlstar {

inline std::string show_word(const Alphabet& alphabet, const Word& w) {
  return w.empty() ? std::string("ε") : alphabet.format_word(w);
}

// The observed block of a Hankel matrix: a prefix-closed set P, a
// suffix-closed set S and the cells H(r, c) for row keys r ∈ P∘Σ^{≤1} and
// column keys c ∈ Σ^{≤1}∘S. Keys keep insertion order. A cell is missing
// until complete() stamps it with a membership answer.
template <Semifield K>
class HankelSystem {
public:
  using Weight = WeightOf<K>;

  HankelSystem(K sf, Alphabet alphabet) : sf_(std::move(sf)), alphabet_(std::move(alphabet)) {
    add_suffix({});
    add_prefix({});
  }

  // A system with the given sets; P may be empty, S must start with ε.
  static HankelSystem with_sets(K sf, Alphabet alphabet, const std::vector<Word>& prefixes,
                                const std::vector<Word>& suffixes) {
    HankelSystem sys(std::move(sf), std::move(alphabet), Bare{});
    for (const auto& s : suffixes) sys.add_suffix(s);
    if (!sys.has_suffix({})) throw InvalidArgument("suffix set must contain the empty word");
    for (const auto& p : prefixes) sys.add_prefix(p);
    return sys;
  }

  const K& semifield() const { return sf_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& prefixes() const { return prefixes_; }
  const std::vector<Word>& suffixes() const { return suffixes_; }
  const std::vector<Word>& row_keys() const { return rows_; }
  const std::vector<Word>& column_keys() const { return cols_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_.size(); }

  // Row index of each prefix, and column index of each suffix, in set order.
  const std::vector<std::size_t>& prefix_rows() const { return prefix_rows_; }
  const std::vector<std::size_t>& suffix_cols() const { return suffix_cols_; }
  std::size_t extension_row(std::size_t prefix_pos, Symbol a) const {
    return ext_rows_.at(prefix_pos * alphabet_.size() + a);
  }

  std::optional<std::size_t> row_of(const Word& w) const { return lookup(row_index_, w); }
  std::optional<std::size_t> col_of(const Word& w) const { return lookup(col_index_, w); }
  std::optional<std::size_t> prefix_pos(const Word& w) const { return lookup(prefix_index_, w); }
  bool has_prefix(const Word& w) const { return prefix_index_.count(w) > 0; }
  bool has_suffix(const Word& w) const { return suffix_index_.count(w) > 0; }

  // Adds p to P together with its row and its one-symbol extension rows.
  // Returns false if p is already present.
  bool add_prefix(const Word& p) {
    detail::check_word(alphabet_, p);
    if (has_prefix(p)) return false;
    if (!p.empty() && !has_prefix(Word(p.begin(), p.end() - 1)))
      throw InvalidArgument("prefix set would not be prefix-closed: " + show_word(alphabet_, p));
    prefix_index_.emplace(p, prefixes_.size());
    prefixes_.push_back(p);
    prefix_rows_.push_back(add_row(p));
    for (Symbol a = 0; a < alphabet_.size(); ++a) ext_rows_.push_back(add_row(append(p, a)));
    return true;
  }

  // Adds every prefix of t, from ε to t itself. Returns how many were new.
  std::size_t add_prefixes_of(const Word& t) {
    std::size_t added = 0;
    for (std::size_t n = 0; n <= t.size(); ++n) added += add_prefix(Word(t.begin(), t.begin() + n));
    return added;
  }

  // Adds s to S together with the columns a·s. Returns false if present.
  bool add_suffix(const Word& s) {
    detail::check_word(alphabet_, s);
    if (has_suffix(s)) return false;
    if (!s.empty() && !has_suffix(Word(s.begin() + 1, s.end())))
      throw InvalidArgument("suffix set would not be suffix-closed: " + show_word(alphabet_, s));
    suffix_index_.emplace(s, suffixes_.size());
    suffixes_.push_back(s);
    suffix_cols_.push_back(add_col(s));
    for (Symbol a = 0; a < alphabet_.size(); ++a) add_col(prepend(a, s));
    return true;
  }

  const std::optional<Weight>& cell(std::size_t r, std::size_t c) const { return cells_.at(r).at(c); }

  // Cell weight; throws IncompleteRow if the cell was never stamped.
  const Weight& value(std::size_t r, std::size_t c) const {
    const auto& w = cell(r, c);
    if (!w)
      throw IncompleteRow("cell (" + show_word(alphabet_, rows_[r]) + ", " +
                          show_word(alphabet_, cols_[c]) + ") is missing");
    return *w;
  }

  void stamp(std::size_t r, std::size_t c, Weight w) { cells_.at(r).at(c) = std::move(w); }

  bool row_complete(std::size_t r) const {
    for (const auto& w : cells_.at(r))
      if (!w) return false;
    return true;
  }

  std::size_t missing_cells() const {
    std::size_t n = 0;
    for (const auto& row : cells_)
      for (const auto& w : row) n += !w;
    return n;
  }
  bool is_complete() const { return missing_cells() == 0; }

  // Stamps every missing cell (r, c) with membership(r·c). Returns the
  // number of cells stamped.
  template <class Membership>
  std::size_t complete(Membership&& membership) {
    std::size_t stamped = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < cols_.size(); ++c)
        if (!cells_[r][c]) {
          cells_[r][c] = membership(concat(rows_[r], cols_[c]));
          ++stamped;
        }
    return stamped;
  }

  // Tab-separated table: a header of column keys, then one line per row key
  // in insertion order. Missing cells print as "?".
  std::string dump() const {
    std::ostringstream out;
    out << "H";
    for (const auto& c : cols_) out << '\t' << show_word(alphabet_, c);
    out << '\n';
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      out << show_word(alphabet_, rows_[r]);
      for (const auto& w : cells_[r]) out << '\t' << (w ? sf_.format(*w) : std::string("?"));
      out << '\n';
    }
    return out.str();
  }

private:
  struct Bare {};
  HankelSystem(K sf, Alphabet alphabet, Bare) : sf_(std::move(sf)), alphabet_(std::move(alphabet)) {}

  using Index = std::unordered_map<Word, std::size_t, WordHash>;

  static std::optional<std::size_t> lookup(const Index& idx, const Word& w) {
    auto it = idx.find(w);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  std::size_t add_row(const Word& w) {
    auto [it, inserted] = row_index_.emplace(w, rows_.size());
    if (inserted) {
      rows_.push_back(w);
      cells_.emplace_back(cols_.size());
    }
    return it->second;
  }

  std::size_t add_col(const Word& w) {
    auto [it, inserted] = col_index_.emplace(w, cols_.size());
    if (inserted) {
      cols_.push_back(w);
      for (auto& row : cells_) row.emplace_back();
    }
    return it->second;
  }

  K sf_;
  Alphabet alphabet_;
  std::vector<Word> prefixes_, suffixes_, rows_, cols_;
  Index prefix_index_, suffix_index_, row_index_, col_index_;
  std::vector<std::size_t> prefix_rows_, suffix_cols_, ext_rows_;
  std::vector<std::vector<std::optional<Weight>>> cells_;
};

// ⊕ of H(r, s) over s ∈ S only.
template <Semifield K>
WeightOf<K> d(const HankelSystem<K>& sys, std::size_t r) {
  const K& sf = sys.semifield();
  if (!sys.row_complete(r))
    throw IncompleteRow("row " + show_word(sys.alphabet(), sys.row_keys()[r]) + " is incomplete");
  WeightOf<K> sum = sf.zero();
  for (std::size_t c : sys.suffix_cols()) sum = sf.plus(sum, sys.value(r, c));
  return sum;
}

template <Semifield K>
bool is_null_row(const HankelSystem<K>& sys, std::size_t r) {
  for (std::size_t c = 0; c < sys.num_cols(); ++c)
    if (!sys.semifield().is_zero(sys.value(r, c))) return false;
  return true;
}

// k with H_{r1} = k ⊗ H_{r2} on every column, or nullopt. The constant is
// read off the first column where both rows are nonzero. Two null rows are
// related by 1̄.
template <Semifield K>
std::optional<WeightOf<K>> homothetic(const HankelSystem<K>& sys, std::size_t r1, std::size_t r2) {
  const K& sf = sys.semifield();
  std::optional<WeightOf<K>> k;
  for (std::size_t c = 0; c < sys.num_cols(); ++c) {
    const auto& x = sys.value(r1, c);
    const auto& y = sys.value(r2, c);
    bool zx = sf.is_zero(x), zy = sf.is_zero(y);
    if (zx != zy) return std::nullopt;
    if (zx) continue;
    if (!k) {
      k = sf.divide(x, y);
      continue;
    }
    if (!sf.equal(x, sf.times(*k, y))) return std::nullopt;
  }
  if (!k) return sf.one();
  return k;
}

// The classes of ∼_H on all row keys. Prefix rows are classified first, so
// classes [0, prefix_classes) are exactly those containing a prefix, and the
// representative of a class is its earliest row in that order.
template <Semifield K>
struct RowClasses {
  std::vector<std::size_t> class_of;       // per row key
  std::vector<WeightOf<K>> scale;          // row = scale ⊗ representative row
  std::vector<std::size_t> representative; // per class, a row index
  std::vector<bool> null_class;            // per class
  std::vector<WeightOf<K>> d;              // per row key
  std::size_t prefix_classes = 0;
  // Prefix classes whose rows are not null.
  std::size_t dim = 0;
};

template <Semifield K>
RowClasses<K> classify(const HankelSystem<K>& sys) {
  RowClasses<K> out;
  const std::size_t n = sys.num_rows();
  out.class_of.assign(n, SIZE_MAX);
  out.scale.assign(n, sys.semifield().one());
  out.d.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.d.push_back(d(sys, r));

  auto place = [&](std::size_t r) {
    if (out.class_of[r] != SIZE_MAX) return;
    for (std::size_t c = 0; c < out.representative.size(); ++c)
      if (auto k = homothetic(sys, r, out.representative[c])) {
        out.class_of[r] = c;
        out.scale[r] = *k;
        return;
      }
    out.class_of[r] = out.representative.size();
    out.representative.push_back(r);
    out.null_class.push_back(is_null_row(sys, r));
  };
  for (std::size_t r : sys.prefix_rows()) place(r);
  out.prefix_classes = out.representative.size();
  for (std::size_t r = 0; r < n; ++r) place(r);
  for (std::size_t c = 0; c < out.prefix_classes; ++c) out.dim += !out.null_class[c];
  return out;
}

// Number of ∼_H classes of P whose rows are not null.
template <Semifield K>
std::size_t dim(const HankelSystem<K>& sys) {
  return classify(sys).dim;
}

struct ClosureWitness {
  std::size_t prefix; // position in P
  Symbol symbol;
};

// First (p, a), in P order then symbol order, whose extension row is not null
// and is homothetic to no prefix row.
template <Semifield K>
std::optional<ClosureWitness> is_closed(const HankelSystem<K>& sys, const RowClasses<K>& cls) {
  for (std::size_t i = 0; i < sys.prefixes().size(); ++i)
    for (Symbol a = 0; a < sys.alphabet().size(); ++a) {
      std::size_t r = sys.extension_row(i, a);
      std::size_t c = cls.class_of[r];
      if (c >= cls.prefix_classes && !cls.null_class[c]) return ClosureWitness{i, a};
    }
  return std::nullopt;
}

template <Semifield K>
std::optional<ClosureWitness> is_closed(const HankelSystem<K>& sys) {
  return is_closed(sys, classify(sys));
}

struct ConsistencyWitness {
  std::size_t p; // positions in P, p < q
  std::size_t q;
  Symbol symbol;
  // Column keys c of the extension rows such that adding c to S (and so the
  // column a·c) separates p from q. The first one is where the extension rows
  // first disagree.
  std::vector<Word> columns;
};

namespace detail {

// Columns of the extension rows x = H_{pa} and y = H_{qa} that separate p
// and q once prefixed with a. k relates the parent rows, H_p = k ⊗ H_q; when
// both parents are null, k carries no information and the columns must
// separate x from y on their own.
template <Semifield K>
std::vector<Word> separating_columns(const HankelSystem<K>& sys, std::size_t x, std::size_t y,
                                     const WeightOf<K>& k, bool parents_null) {
  const K& sf = sys.semifield();
  const auto& cols = sys.column_keys();
  if (!parents_null) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!sf.equal(sys.value(x, c), sf.times(k, sys.value(y, c)))) return {cols[c]};
    return {};
  }
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (sf.is_zero(sys.value(x, c)) != sf.is_zero(sys.value(y, c))) return {cols[c]};
  std::optional<std::size_t> first;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (sf.is_zero(sys.value(x, c))) continue;
    if (!first) {
      first = c;
      continue;
    }
    // x_c / x_first ≠ y_c / y_first
    if (!sf.equal(sf.times(sys.value(x, c), sys.value(y, *first)),
                  sf.times(sys.value(y, c), sys.value(x, *first))))
      return {cols[*first], cols[c]};
  }
  return {};
}

} // namespace detail

// Every violation (p, q, a) for the first pair p ∼_H q, in P order, that has
// one. Empty when the system is consistent.
template <Semifield K>
std::vector<ConsistencyWitness> consistency_violations(const HankelSystem<K>& sys,
                                                       const RowClasses<K>& cls) {
  const auto& rows = sys.prefix_rows();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (cls.class_of[rows[i]] != cls.class_of[rows[j]]) continue;
      std::vector<ConsistencyWitness> found;
      for (Symbol a = 0; a < sys.alphabet().size(); ++a) {
        std::size_t x = sys.extension_row(i, a);
        std::size_t y = sys.extension_row(j, a);
        if (cls.class_of[x] == cls.class_of[y]) continue;
        auto k = sys.semifield().divide(cls.scale[rows[i]], cls.scale[rows[j]]);
        bool parents_null = cls.null_class[cls.class_of[rows[i]]];
        found.push_back({i, j, a, detail::separating_columns(sys, x, y, k, parents_null)});
      }
      if (!found.empty()) return found;
    }
  return {};
}

template <Semifield K>
std::optional<ConsistencyWitness> is_consistent(const HankelSystem<K>& sys,
                                                const RowClasses<K>& cls) {
  auto v = consistency_violations(sys, cls);
  if (v.empty()) return std::nullopt;
  return v.front();
}

template <Semifield K>
std::optional<ConsistencyWitness> is_consistent(const HankelSystem<K>& sys) {
  return is_consistent(sys, classify(sys));
}

// A prefix row that is not yet safe to drop or to use as a state: either its
// S-sum vanishes although the row has a nonzero entry (column `column` ∉ S),
// or the row is null while one of its extension rows is not.
struct NullRowDefect {
  std::size_t prefix; // position in P
  // Column keys to add to S, in order.
  std::vector<Word> suffixes;
};

template <Semifield K>
std::optional<NullRowDefect> find_null_row_defect(const HankelSystem<K>& sys) {
  const K& sf = sys.semifield();
  const auto& cols = sys.column_keys();
  for (std::size_t i = 0; i < sys.prefixes().size(); ++i) {
    std::size_t r = sys.prefix_rows()[i];
    if (!sf.is_zero(d(sys, r))) continue;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!sf.is_zero(sys.value(r, c))) return NullRowDefect{i, {cols[c]}};
    for (Symbol a = 0; a < sys.alphabet().size(); ++a) {
      std::size_t x = sys.extension_row(i, a);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (sf.is_zero(sys.value(x, c))) continue;
        NullRowDefect defect{i, {}};
        if (!sys.has_suffix(cols[c])) defect.suffixes.push_back(cols[c]);
        defect.suffixes.push_back(prepend(a, cols[c]));
        return defect;
      }
    }
  }
  return std::nullopt;
}

// Repairs one defect, if any, and re-completes. Afterwards the repaired
// prefix has a nonzero S-sum.
template <Semifield K, class Membership>
std::optional<NullRowDefect> repair_null_row(HankelSystem<K>& sys, Membership&& membership) {
  auto defect = find_null_row_defect(sys);
  if (!defect) return std::nullopt;
  for (const auto& s : defect->suffixes) sys.add_suffix(s);
  sys.complete(membership);
  return defect;
}

// Repairs until no defect is left. Returns the number of repairs.
template <Semifield K, class Membership>
std::size_t repair_null_rows(HankelSystem<K>& sys, Membership&& membership) {
  std::size_t n = 0;
  while (repair_null_row(sys, membership)) ++n;
  return n;
}

// The system restricted to prefixes with nonzero S-sum. Requires those
// prefixes to be prefix-closed, which holds once repair_null_rows has run.
template <Semifield K>
HankelSystem<K> drop_null_rows(const HankelSystem<K>& sys) {
  const K& sf = sys.semifield();
  std::vector<Word> live;
  for (std::size_t i = 0; i < sys.prefixes().size(); ++i)
    if (!sf.is_zero(d(sys, sys.prefix_rows()[i]))) live.push_back(sys.prefixes()[i]);
  std::unordered_map<Word, bool, WordHash> keep;
  for (const auto& p : live) keep[p] = true;
  for (const auto& p : live)
    if (!p.empty() && !keep.count(Word(p.begin(), p.end() - 1)))
      throw InvalidArgument("null prefixes are not downward closed; repair them first");
  auto out = HankelSystem<K>::with_sets(sf, sys.alphabet(), live, sys.suffixes());
  for (std::size_t r = 0; r < out.num_rows(); ++r) {
    std::size_t src_r = *sys.row_of(out.row_keys()[r]);
    for (std::size_t c = 0; c < out.num_cols(); ++c) {
      const auto& w = sys.cell(src_r, *sys.col_of(out.column_keys()[c]));
      if (w) out.stamp(r, c, *w);
    }
  }
  return out;
}

// A repaired copy of sys with its null prefixes dropped.
template <Semifield K, class Membership>
HankelSystem<K> remove_null_rows(HankelSystem<K> sys, Membership&& membership) {
  repair_null_rows(sys, membership);
  return drop_null_rows(sys);
}

// Name of the first failed requirement among: complete, non-trivial (every
// prefix has nonzero S-sum), closed, consistent. nullopt when all hold.
template <Semifield K>
std::optional<std::string> empirical_defect(const HankelSystem<K>& sys) {
  if (!sys.is_complete()) return "incomplete";
  for (std::size_t r : sys.prefix_rows())
    if (sys.semifield().is_zero(d(sys, r))) return "non-trivial";
  auto cls = classify(sys);
  if (is_closed(sys, cls)) return "closed";
  if (is_consistent(sys, cls)) return "consistent";
  return std::nullopt;
}

// The automaton with one state per prefix (state i is the i-th prefix):
// p -a/w-> q whenever pa ∼_H q, with w = d(pa) ⊘ d(p); λ(ε) = d(ε);
// ρ(p) = H(p, ε) ⊘ d(p).
template <Semifield K>
Wfsa<K> naive_automaton(const HankelSystem<K>& sys, const RowClasses<K>& cls) {
  const K& sf = sys.semifield();
  const auto& rows = sys.prefix_rows();
  Wfsa<K> a(sf, sys.alphabet(), rows.size());
  std::size_t eps_col = *sys.col_of({});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& dp = cls.d[rows[i]];
    if (sys.prefixes()[i].empty()) a.set_initial(static_cast<State>(i), dp);
    a.set_final(static_cast<State>(i), sf.divide(sys.value(rows[i], eps_col), dp));
    for (Symbol s = 0; s < sys.alphabet().size(); ++s) {
      std::size_t x = sys.extension_row(i, s);
      if (cls.null_class[cls.class_of[x]]) continue;
      auto w = sf.divide(cls.d[x], dp);
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (cls.class_of[rows[j]] == cls.class_of[x])
          a.add_arc(static_cast<State>(i), s, w, static_cast<State>(j));
    }
  }
  return a;
}

// ∼_H restricted to P, as a partition of the naive automaton's states.
template <Semifield K>
StatePartition hankel_partition(const HankelSystem<K>& sys, const RowClasses<K>& cls) {
  std::vector<std::size_t> labels;
  for (std::size_t r : sys.prefix_rows()) labels.push_back(cls.class_of[r]);
  return StatePartition(labels);
}

// The naive automaton quotiented by ∼_H. An empty prefix set denotes the
// zero language and yields the canonical empty automaton.
template <Semifield K>
Wdfsa<K> make_automaton(const HankelSystem<K>& sys) {
  if (sys.prefixes().empty()) return Wdfsa<K>::empty(sys.semifield(), sys.alphabet());
  if (auto defect = empirical_defect(sys))
    throw NotAnEmpiricalSystem("system is not " + *defect);
  auto cls = classify(sys);
  return Wdfsa<K>(quotient(naive_automaton(sys, cls), hankel_partition(sys, cls)));
}

// True when sys1 is a proper restriction of sys2: P1 ⊆ P2, S1 ⊆ S2, at least
// one inclusion strict, and equal weights on every cell of sys1.
template <Semifield K>
bool partial_order_leq(const HankelSystem<K>& sys1, const HankelSystem<K>& sys2) {
  for (const auto& p : sys1.prefixes())
    if (!sys2.has_prefix(p)) return false;
  for (const auto& s : sys1.suffixes())
    if (!sys2.has_suffix(s)) return false;
  if (sys1.prefixes().size() == sys2.prefixes().size() &&
      sys1.suffixes().size() == sys2.suffixes().size())
    return false;
  const K& sf = sys1.semifield();
  for (std::size_t r = 0; r < sys1.num_rows(); ++r) {
    std::size_t r2 = *sys2.row_of(sys1.row_keys()[r]);
    for (std::size_t c = 0; c < sys1.num_cols(); ++c) {
      std::size_t c2 = *sys2.col_of(sys1.column_keys()[c]);
      const auto& x = sys1.cell(r, c);
      const auto& y = sys2.cell(r2, c2);
      if (!x || !y || !sf.equal(*x, *y)) return false;
    }
  }
  return true;
}

// True when lang(r·c) equals H(r, c) on every cell.
template <Semifield K, class Lang>
bool contains(Lang&& lang, const HankelSystem<K>& sys) {
  for (std::size_t r = 0; r < sys.num_rows(); ++r)
    for (std::size_t c = 0; c < sys.num_cols(); ++c) {
      const auto& w = sys.cell(r, c);
      if (!w) return false;
      if (!sys.semifield().equal(lang(concat(sys.row_keys()[r], sys.column_keys()[c])), *w))
        return false;
    }
  return true;
}

} // namespace wlstar
