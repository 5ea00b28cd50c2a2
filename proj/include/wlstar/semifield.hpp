#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <system_error>

#include "wlstar/error.hpp"

namespace wlstar {

// A commutative, zero-sum-free semifield: (K, plus, zero) is a commutative
// monoid, (K \ {zero}, times, one) is a group, times distributes over plus and
// zero annihilates. Instances are small value objects; the ones carrying a
// tolerance make `equal` tolerance-based.
template <class K>
concept Semifield = std::copyable<K> && std::equality_comparable<K> &&
    requires(const K& k, const typename K::value_type& x, std::string_view text) {
      typename K::value_type;
      { K::name } -> std::convertible_to<std::string_view>;
      { k.zero() } -> std::same_as<typename K::value_type>;
      { k.one() } -> std::same_as<typename K::value_type>;
      { k.plus(x, x) } -> std::same_as<typename K::value_type>;
      { k.times(x, x) } -> std::same_as<typename K::value_type>;
      { k.divide(x, x) } -> std::same_as<typename K::value_type>;
      { k.equal(x, x) } -> std::same_as<bool>;
      { k.is_zero(x) } -> std::same_as<bool>;
      { k.parse(text) } -> std::same_as<typename K::value_type>;
      { k.format(x) } -> std::same_as<std::string>;
    };

template <Semifield K>
using WeightOf = typename K::value_type;

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline double parse_double(std::string_view text, std::string_view what) {
  double value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("invalid " + std::string(what) + " weight '" + std::string(text) + "'");
  return value;
}

inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

} // namespace detail

// ({0,1}, or, and).
struct Boolean {
  using value_type = bool;
  static constexpr std::string_view name = "boolean";

  bool zero() const { return false; }
  bool one() const { return true; }
  bool plus(bool x, bool y) const { return x || y; }
  bool times(bool x, bool y) const { return x && y; }
  bool divide(bool x, bool y) const {
    if (!y) throw DivisionByZero();
    return x;
  }
  bool equal(bool x, bool y) const { return x == y; }
  bool is_zero(bool x) const { return !x; }

  bool parse(std::string_view text) const {
    if (text == "0") return false;
    if (text == "1") return true;
    throw ParseError("invalid boolean weight '" + std::string(text) + "'");
  }
  std::string format(bool x) const { return x ? "1" : "0"; }

  bool operator==(const Boolean&) const = default;
};

// Exact non-negative rationals under (+, *).
struct NonnegRational {
  using value_type = mpq_class;
  static constexpr std::string_view name = "rational";

  mpq_class zero() const { return mpq_class(0); }
  mpq_class one() const { return mpq_class(1); }
  mpq_class plus(const mpq_class& x, const mpq_class& y) const { return mpq_class(x + y); }
  mpq_class times(const mpq_class& x, const mpq_class& y) const { return mpq_class(x * y); }
  mpq_class divide(const mpq_class& x, const mpq_class& y) const {
    if (sgn(y) == 0) throw DivisionByZero();
    return mpq_class(x / y);
  }
  bool equal(const mpq_class& x, const mpq_class& y) const { return x == y; }
  bool is_zero(const mpq_class& x) const { return sgn(x) == 0; }

  // Accepts "num" or "num/den" with decimal digits only.
  mpq_class parse(std::string_view text) const {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                           : text.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("invalid rational weight '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in rational weight '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
  }
  std::string format(const mpq_class& x) const { return x.get_str(); }

  bool operator==(const NonnegRational&) const = default;
};

// Floating non-negative reals under (+, *), compared with a relative tolerance.
struct NonnegReal {
  using value_type = double;
  static constexpr std::string_view name = "real";
  static constexpr double default_tolerance = 1e-9;

  double tolerance = default_tolerance;

  double zero() const { return 0.0; }
  double one() const { return 1.0; }
  double plus(double x, double y) const { return x + y; }
  double times(double x, double y) const { return x * y; }
  double divide(double x, double y) const {
    if (is_zero(y)) throw DivisionByZero();
    return x / y;
  }
  bool equal(double x, double y) const {
    double scale = std::max({std::abs(x), std::abs(y), 1.0});
    return std::abs(x - y) <= tolerance * scale;
  }
  // Exact test: a weight is 0 only when it is literally 0.
  bool is_zero(double x) const { return x == 0.0; }

  double parse(std::string_view text) const {
    double v = detail::parse_double(text, name);
    if (!(v >= 0.0) || std::isinf(v))
      throw ParseError("real weight must be finite and non-negative: '" + std::string(text) + "'");
    return v;
  }
  std::string format(double x) const { return detail::format_double(x); }

  bool operator==(const NonnegReal&) const = default;
};

// The tropical semifield (R ∪ {+inf}, min, +, +inf, 0). Equality is exact, so
// weights are expected to be integers or other exactly representable values.
struct MinPlus {
  using value_type = double;
  static constexpr std::string_view name = "minplus";

  double zero() const { return std::numeric_limits<double>::infinity(); }
  double one() const { return 0.0; }
  double plus(double x, double y) const { return std::min(x, y); }
  double times(double x, double y) const { return x + y; }
  double divide(double x, double y) const {
    if (is_zero(y)) throw DivisionByZero();
    return x - y;
  }
  bool equal(double x, double y) const { return x == y; }
  bool is_zero(double x) const { return std::isinf(x); }

  double parse(std::string_view text) const {
    if (text == "inf" || text == "+inf") return zero();
    double v = detail::parse_double(text, name);
    if (std::isnan(v) || std::isinf(v))
      throw ParseError("invalid minplus weight '" + std::string(text) + "'");
    return v;
  }
  std::string format(double x) const { return is_zero(x) ? "inf" : detail::format_double(x); }

  bool operator==(const MinPlus&) const = default;
};

// x ⊕ x ⊕ ... ⊕ x with n summands, n >= 1.
template <Semifield K>
WeightOf<K> nfold(const K& sf, std::uint64_t n, const WeightOf<K>& x) {
  if (n == 0) throw InvalidArgument("nfold requires at least one summand");
  WeightOf<K> result = sf.zero();
  WeightOf<K> power = x;
  while (n > 0) {
    if (n & 1u) result = sf.plus(result, power);
    n >>= 1;
    if (n > 0) power = sf.plus(power, power);
  }
  return result;
}

// Runtime selection of one of the shipped instances.
enum class SemifieldKind { boolean, rational, real, minplus };

inline SemifieldKind parse_semifield_kind(std::string_view name) {
  if (name == Boolean::name) return SemifieldKind::boolean;
  if (name == NonnegRational::name) return SemifieldKind::rational;
  if (name == NonnegReal::name) return SemifieldKind::real;
  if (name == MinPlus::name) return SemifieldKind::minplus;
  throw ParseError("unknown semifield '" + std::string(name) + "'");
}

inline std::string_view semifield_name(SemifieldKind kind) {
  switch (kind) {
  case SemifieldKind::boolean: return Boolean::name;
  case SemifieldKind::rational: return NonnegRational::name;
  case SemifieldKind::real: return NonnegReal::name;
  case SemifieldKind::minplus: return MinPlus::name;
  }
  return {};
}

// Invokes `f` with an instance of the selected semifield.
template <class F>
decltype(auto) with_semifield(SemifieldKind kind, double tolerance, F&& f) {
  switch (kind) {
  case SemifieldKind::boolean: return f(Boolean{});
  case SemifieldKind::rational: return f(NonnegRational{});
  case SemifieldKind::real: return f(NonnegReal{tolerance});
  case SemifieldKind::minplus: break;
  }
  return f(MinPlus{});
}

} // namespace wlstar
