#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <stdexcept>
#include <string>

namespace tropmin {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always stored in lowest terms with a positive
// denominator.  All arithmetic in this library is exact; no rounding ever
// occurs anywhere.
using Rational = boost::multiprecision::cpp_rational;

/// Thrown on violated preconditions and malformed inputs (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal consistency assertion fails (CLI exit code 3).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string printRational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Parses "p", "-p" or "p/q".  Rejects zero denominators and stray characters.
inline Rational parseRational(const std::string& s) {
  std::size_t i = 0;
  auto fail = [&]() -> Rational {
    throw InputError("invalid rational literal: \"" + s + "\"");
  };
  auto skipSpace = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  skipSpace();
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = (s[i] == '-');
    ++i;
  }
  std::size_t digitsStart = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == digitsStart) return fail();
  BigInt num(s.substr(digitsStart, i - digitsStart));
  BigInt den = 1;
  skipSpace();
  if (i < s.size() && s[i] == '/') {
    ++i;
    skipSpace();
    std::size_t denStart = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == denStart) return fail();
    den = BigInt(s.substr(denStart, i - denStart));
    if (den == 0) throw InputError("zero denominator in rational: \"" + s + "\"");
  }
  skipSpace();
  if (i != s.size()) return fail();
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

inline int sign(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

}  // namespace tropmin
