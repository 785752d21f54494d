#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropmin/rational.hpp"

namespace tropmin {

// Subsets of [n] are bitmasks: element i of [n] (1-based) is bit i-1.
using Mask = std::uint32_t;

inline int subsetSize(Mask m) { return std::popcount(m); }

// A subset S of [n].  The enumeration bound n <= 16 keeps everything that
// iterates over 2^n or 4^n at desk scale.
struct SubsetIndex {
  int n = 0;
  Mask bits = 0;

  SubsetIndex() = default;
  SubsetIndex(int n_, Mask bits_) : n(n_), bits(bits_) {
    if (n < 1 || n > 16) throw InputError("subset ground set out of range (1..16)");
    if (bits >= (Mask{1} << n)) throw InputError("subset bits out of range");
  }
  int size() const { return subsetSize(bits); }
};

// Sorted element list of a mask, 1-based.
inline std::vector<int> maskElements(Mask m) {
  std::vector<int> out;
  for (int i = 0; i < 32 && (m >> i); ++i)
    if (m & (Mask{1} << i)) out.push_back(i + 1);
  return out;
}

// A value in Q union {-inf}.  -inf + x = -inf and -inf < every finite value.
class TropValue {
 public:
  TropValue() : finite_(false) {}  // -inf
  TropValue(Rational v) : finite_(true), v_(std::move(v)) {}
  static TropValue bottom() { return TropValue(); }

  bool isFinite() const { return finite_; }
  const Rational& value() const {
    if (!finite_) throw InputError("value of -inf requested");
    return v_;
  }

  friend TropValue operator+(const TropValue& a, const TropValue& b) {
    if (!a.finite_ || !b.finite_) return bottom();
    return TropValue(a.v_ + b.v_);
  }
  friend bool operator==(const TropValue& a, const TropValue& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const TropValue& a, const TropValue& b) {
    return !(a == b);
  }
  friend bool operator<(const TropValue& a, const TropValue& b) {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const TropValue& a, const TropValue& b) {
    return a < b || a == b;
  }
  friend bool operator>=(const TropValue& a, const TropValue& b) { return b <= a; }
  friend bool operator>(const TropValue& a, const TropValue& b) { return b < a; }

  static TropValue max(const TropValue& a, const TropValue& b) {
    return a < b ? b : a;
  }

  std::string str() const { return finite_ ? printRational(v_) : "-inf"; }
  static TropValue parse(const std::string& s) {
    if (s == "-inf") return bottom();
    return TropValue(parseRational(s));
  }

 private:
  bool finite_;
  Rational v_;
};

// A total map 2^[n] -> Q union {-inf}, indexed by subset bitmask.
struct SetFunction {
  int n = 0;
  std::vector<TropValue> values;  // size 1 << n

  SetFunction() = default;
  explicit SetFunction(int n_) : n(n_), values(std::size_t{1} << n_) {
    if (n_ < 1 || n_ > 16) throw InputError("set function ground set out of range (1..16)");
  }

  Mask fullMask() const { return (Mask{1} << n) - 1; }
  const TropValue& at(Mask s) const { return values.at(s); }
  TropValue& at(Mask s) { return values.at(s); }

  bool isFinite() const {
    for (const auto& v : values)
      if (!v.isFinite()) return false;
    return true;
  }
  friend bool operator==(const SetFunction& a, const SetFunction& b) {
    return a.n == b.n && a.values == b.values;
  }
};

inline void requireFinite(const SetFunction& f, const char* who) {
  if (!f.isFinite())
    throw InputError(std::string(who) + ": finite function required");
}

// lambda_0, ..., lambda_n: one tropical scalar per layer of the cube.
using ScalingVector = std::vector<Rational>;

// ---------------------------------------------------------------------------
// JSON format:
//   {"n": 3, "values": {"": "0", "1": "0", ..., "123": "-8"}}
// Keys are sorted digit strings for n <= 9 and comma-separated element lists
// for n >= 10; values are rational strings "p/q" or "-inf".

inline std::string subsetKey(Mask s, int n) {
  std::string key;
  for (int i = 1; i <= n; ++i) {
    if (!(s & (Mask{1} << (i - 1)))) continue;
    if (n >= 10 && !key.empty()) key += ",";
    key += std::to_string(i);
  }
  return key;
}

inline Mask parseSubsetKey(const std::string& key, int n) {
  Mask s = 0;
  int prev = 0;
  auto add = [&](int e) {
    if (e < 1 || e > n) throw InputError("subset key element out of range: \"" + key + "\"");
    if (e <= prev)
      throw InputError("subset key elements must be strictly increasing: \"" +
                       key + "\"");
    prev = e;
    s |= Mask{1} << (e - 1);
  };
  if (key.empty()) return 0;
  if (n <= 9) {
    for (char c : key) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw InputError("invalid subset key: \"" + key + "\"");
      add(c - '0');
    }
  } else {
    std::size_t pos = 0;
    while (pos < key.size()) {
      std::size_t comma = key.find(',', pos);
      std::string tok = key.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
      if (tok.empty()) throw InputError("invalid subset key: \"" + key + "\"");
      add(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return s;
}

inline nlohmann::ordered_json setFunctionToJson(const SetFunction& f) {
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  // emit by (size, mask): "", "1", "2", "12", ... matching sorted digit keys
  std::vector<Mask> order;
  for (Mask m = 0; m < (Mask{1} << f.n); ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) {
    return subsetSize(a) < subsetSize(b);
  });
  for (Mask m : order) vals[subsetKey(m, f.n)] = f.at(m).str();
  nlohmann::ordered_json j;
  j["n"] = f.n;
  j["values"] = vals;
  return j;
}

inline SetFunction setFunctionFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("values"))
    throw InputError("set function JSON must have \"n\" and \"values\"");
  if (!j["n"].is_number_integer())
    throw InputError("set function \"n\" must be an integer");
  int n = j["n"].get<int>();
  if (n < 1 || n > 16) throw InputError("set function n out of range (1..16)");
  SetFunction f(n);
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (auto it = j["values"].begin(); it != j["values"].end(); ++it) {
    Mask m = parseSubsetKey(it.key(), n);
    if (seen[m]) throw InputError("duplicate subset key: \"" + it.key() + "\"");
    seen[m] = true;
    if (!it.value().is_string())
      throw InputError("set function values must be strings");
    f.at(m) = TropValue::parse(it.value().get<std::string>());
  }
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (!seen[m])
      throw InputError("set function missing value for subset \"" +
                       subsetKey(m, n) + "\"");
  return f;
}

}  // namespace tropmin
