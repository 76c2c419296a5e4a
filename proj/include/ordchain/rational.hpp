#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ordchain {

// Exact arithmetic everywhere. Rationals are kept in lowest terms with a
// positive denominator by the underlying representation.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AddressError : Error {
  using Error::Error;
};
struct EmptinessError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct ConstructionError : Error {
  using Error::Error;
};
struct InputError : Error {
  using Error::Error;
};

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

// The two-argument cpp_rational constructor rejects negative denominators;
// this one moves the sign up first.
inline Rat make_rat(Int n, Int d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rat(n, d);
}

inline Int floor_rat(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int quo = n / d;
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

inline Int ceil_rat(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int quo = n / d;
  if (n > 0 && quo * d != n) ++quo;
  return quo;
}

/// Renders "p" when the denominator is 1, "p/q" otherwise.
inline std::string rat_to_string(const Rat& q) {
  std::string s = numerator(q).str();
  if (!is_integer(q)) s += "/" + denominator(q).str();
  return s;
}

namespace detail {

inline std::optional<Int> parse_canonical_int(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && s[i] == '-') {
    neg = true;
    ++i;
  }
  if (i >= s.size()) return std::nullopt;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return std::nullopt;
  // no leading zeros, no "-0"
  if (s[i] == '0' && s.size() - i > 1) return std::nullopt;
  Int v(s.substr(i));
  if (neg && v == 0) return std::nullopt;
  return neg ? Int(-v) : v;
}

}  // namespace detail

// Accepts "p" or "p/q" with q >= 1 and gcd(|p|, q) = 1. Anything
// non-canonical ("6/4", "5/1", "+3", "007") is rejected so that values
// round-trip byte-exactly.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto v = detail::parse_canonical_int(s);
    if (!v) throw InputError("malformed integer literal: '" + s + "'");
    return Rat(*v);
  }
  auto p = detail::parse_canonical_int(s.substr(0, slash));
  auto q = detail::parse_canonical_int(s.substr(slash + 1));
  if (!p || !q || *q < 1) throw InputError("malformed rational literal: '" + s + "'");
  if (*q == 1) throw InputError("rational literal not in canonical form: '" + s + "'");
  if (gcd(abs(*p), *q) != 1)
    throw InputError("rational literal not in lowest terms: '" + s + "'");
  return Rat(*p, *q);
}

}  // namespace ordchain
