#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "tropmin/rational.hpp"

namespace tropmin {

// Gaussian-rational coefficient re + im*i.  Real-mode values keep im == 0.
struct Coefficient {
  Rational re;
  Rational im;

  Coefficient() = default;
  Coefficient(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
  Coefficient(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool isZero() const { return re == 0 && im == 0; }
  bool isReal() const { return im == 0; }
  Coefficient conj() const { return {re, -im}; }

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Coefficient operator-(const Coefficient& a) { return {-a.re, -a.im}; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// A finite Puiseux polynomial: a formal sum of terms c * t^gamma with
// rational exponents gamma.  Canonical form: exponents strictly increasing,
// no zero coefficients, the zero element is the empty term list.  The ring
// is closed under +, -, *  (no division is ever needed downstream).
class PuiseuxPoly {
 public:
  struct Term {
    Rational exp;
    Coefficient coeff;
    friend bool operator==(const Term& a, const Term& b) {
      return a.exp == b.exp && a.coeff == b.coeff;
    }
  };

  PuiseuxPoly() = default;  // zero

  static PuiseuxPoly zero() { return {}; }
  static PuiseuxPoly one() { return constant(Coefficient(Rational(1))); }
  static PuiseuxPoly constant(const Coefficient& c) {
    return monomial(Rational(0), c);
  }
  static PuiseuxPoly monomial(const Rational& exp, const Coefficient& c) {
    PuiseuxPoly p;
    if (!c.isZero()) p.terms_.push_back({exp, c});
    return p;
  }
  // t^gamma
  static PuiseuxPoly t(const Rational& gamma = Rational(1)) {
    return monomial(gamma, Coefficient(Rational(1)));
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isReal() const {
    for (const auto& t : terms_)
      if (!t.coeff.isReal()) return false;
    return true;
  }

  friend PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly out;
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() ||
          (i < a.terms_.size() && a.terms_[i].exp < b.terms_[j].exp)) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].exp < a.terms_[i].exp) {
        out.terms_.push_back(b.terms_[j++]);
      } else {
        Coefficient c = a.terms_[i].coeff + b.terms_[j].coeff;
        if (!c.isZero()) out.terms_.push_back({a.terms_[i].exp, c});
        ++i;
        ++j;
      }
    }
    return out;
  }
  friend PuiseuxPoly operator-(const PuiseuxPoly& a) {
    PuiseuxPoly out = a;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }
  friend PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    return a + (-b);
  }
  friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    std::map<Rational, Coefficient> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        auto [it, inserted] =
            acc.emplace(ta.exp + tb.exp, ta.coeff * tb.coeff);
        if (!inserted) it->second = it->second + ta.coeff * tb.coeff;
      }
    PuiseuxPoly out;
    for (auto& [e, c] : acc)
      if (!c.isZero()) out.terms_.push_back({e, c});
    return out;
  }
  PuiseuxPoly& operator+=(const PuiseuxPoly& o) { return *this = *this + o; }
  PuiseuxPoly& operator-=(const PuiseuxPoly& o) { return *this = *this - o; }
  PuiseuxPoly& operator*=(const PuiseuxPoly& o) { return *this = *this * o; }

  friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<Term> terms_;
};

// val(p): the minimum exponent of p.  val(pq) = val(p) + val(q) and
// val(p+q) >= min(val p, val q).
inline Rational val(const PuiseuxPoly& p) {
  if (p.isZero()) throw InputError("valuation of zero undefined");
  return p.terms().front().exp;
}

/// nu(p) = -val(p), the max-convention tropicalization of p.
inline Rational nu(const PuiseuxPoly& p) { return -val(p); }

inline Coefficient leadingCoeff(const PuiseuxPoly& p) {
  if (p.isZero()) throw InputError("leading coefficient of zero undefined");
  return p.terms().front().coeff;
}

// p > 0 in the unique order compatible with the field operations: nonzero
// with positive leading coefficient.  Only defined for real-mode series.
inline bool isPositive(const PuiseuxPoly& p) {
  if (!p.isReal()) throw InputError("order undefined over C");
  return !p.isZero() && p.terms().front().coeff.re > 0;
}

inline PuiseuxPoly conj(const PuiseuxPoly& p) {
  PuiseuxPoly r;
  for (const auto& t : p.terms())
    r += PuiseuxPoly::monomial(t.exp, t.coeff.conj());
  return r;
}

// Substitution t -> t^(1/2): halves every exponent.  A ring isomorphism,
// so it commutes with determinants and halves all valuations exactly.
inline PuiseuxPoly halveExponents(const PuiseuxPoly& p) {
  PuiseuxPoly r;
  for (const auto& t : p.terms())
    r += PuiseuxPoly::monomial(t.exp / 2, t.coeff);
  return r;
}

// ---------------------------------------------------------------------------
// Series literal grammar:
//   series := term (('+'|'-') term)*
//   term   := coeff ('*' 't' ('^' exp)?)? | 't' ('^' exp)?
//   coeff  := rational | '(' rational ('+'|'-') rational 'i' ')'
//   exp    := integer | '(' integer '/' integer ')'
// Whitespace is insignificant.  Printing emits terms in increasing exponent
// order and always round-trips bit-exactly through the parser.

namespace detail {

class SeriesParser {
 public:
  explicit SeriesParser(const std::string& s) : s_(s) {}

  PuiseuxPoly parse() {
    PuiseuxPoly out;
    skip();
    bool neg = false;
    if (match('-'))
      neg = true;
    else
      match('+');
    out += term(neg);
    skip();
    while (pos_ < s_.size()) {
      if (match('+'))
        out += term(false);
      else if (match('-'))
        out += term(true);
      else
        fail("expected '+' or '-'");
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("series parse error at position " +
                     std::to_string(pos_) + ": " + why + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool match(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peekDigit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  BigInt integer() {
    skip();
    bool neg = false;
    if (match('-'))
      neg = true;
    else
      match('+');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected digits");
    BigInt v(s_.substr(start, pos_ - start));
    return neg ? BigInt(-v) : v;
  }
  Rational rationalNumber() {
    BigInt num = integer();
    if (match('/')) {
      BigInt den = integer();
      if (den == 0) fail("zero denominator");
      return Rational(num, den);
    }
    return Rational(num);
  }
  Rational exponent() {
    if (match('(')) {
      BigInt num = integer();
      if (!match('/')) fail("expected '/' in exponent");
      BigInt den = integer();
      if (den == 0) fail("zero denominator in exponent");
      if (!match(')')) fail("expected ')'");
      return Rational(num, den);
    }
    return Rational(integer());
  }
  // One term; 'neg' carries the sign consumed by the caller.
  PuiseuxPoly term(bool neg) {
    skip();
    Coefficient c(Rational(1));
    bool sawCoeff = false;
    if (match('(')) {
      Rational re = rationalNumber();
      Rational im;
      if (match('+'))
        im = rationalNumber();
      else if (match('-'))
        im = -rationalNumber();
      else
        fail("expected '+' or '-' inside complex coefficient");
      if (!match('i')) fail("expected 'i'");
      if (!match(')')) fail("expected ')'");
      c = Coefficient(re, im);
      sawCoeff = true;
    } else if (peekDigit()) {
      c = Coefficient(rationalNumber());
      sawCoeff = true;
    }
    Rational exp(0);
    bool sawT = false;
    if (sawCoeff) {
      std::size_t save = pos_;
      bool star = match('*');
      if (match('t')) {
        sawT = true;
      } else if (star) {
        fail("expected 't' after '*'");
      } else {
        pos_ = save;  // plain constant, also tolerate "2t" as "2*t"
        if (match('t')) sawT = true;
      }
    } else {
      if (!match('t')) fail("expected a coefficient or 't'");
      sawT = true;
    }
    if (sawT) {
      exp = Rational(1);
      if (match('^')) exp = exponent();
    }
    if (neg) c = -c;
    return PuiseuxPoly::monomial(exp, c);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

inline std::string printExponent(const Rational& e) {
  if (e == 1) return "t";
  if (denominator(e) == 1) return "t^" + numerator(e).str();
  return "t^(" + numerator(e).str() + "/" + denominator(e).str() + ")";
}

}  // namespace detail

inline PuiseuxPoly parseSeries(const std::string& s) {
  return detail::SeriesParser(s).parse();
}

inline std::string printSeries(const PuiseuxPoly& p) {
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::string body;
    bool neg = false;
    if (t.coeff.isReal()) {
      Rational c = t.coeff.re;
      neg = c < 0;
      Rational mag = neg ? Rational(-c) : c;
      if (t.exp == 0) {
        body = printRational(mag);
      } else if (mag == 1) {
        body = detail::printExponent(t.exp);
      } else {
        body = printRational(mag) + "*" + detail::printExponent(t.exp);
      }
    } else {
      std::string im = t.coeff.im > 0 ? "+" + printRational(t.coeff.im)
                                      : printRational(t.coeff.im);
      body = "(" + printRational(t.coeff.re) + im + "i)";
      if (t.exp != 0) body += "*" + detail::printExponent(t.exp);
    }
    if (first) {
      out = (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace tropmin
