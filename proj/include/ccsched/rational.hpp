#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "ccsched/errors.hpp"

namespace ccsched {

// Exact ratio, always kept in lowest terms with a positive denominator.
// Cache ratios must stay exact: "smallest P such that P*gamma is an integer"
// is ill-posed on floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

 private:
  void reduce() {
    if (den == 0) throw ArgumentError("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

// Accepts "a/b" and decimal forms like "0.1"; both reduce exactly.
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  try {
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      std::size_t used_n = 0, used_d = 0;
      const std::int64_t n = std::stoll(s.substr(0, slash), &used_n);
      const std::string dpart = s.substr(slash + 1);
      const std::int64_t d = std::stoll(dpart, &used_d);
      if (used_n != slash || used_d != dpart.size())
        throw ArgumentError("trailing characters in rational: " + s);
      return Rational(n, d);
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string whole = s.substr(0, dot);
      const std::string frac = s.substr(dot + 1);
      if (frac.empty() || frac.size() > 18)
        throw ArgumentError("unparseable decimal: " + s);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      std::size_t used_w = 0, used_f = 0;
      const std::int64_t w = whole.empty() ? 0 : std::stoll(whole, &used_w);
      const std::int64_t f = std::stoll(frac, &used_f);
      if ((!whole.empty() && used_w != whole.size()) || used_f != frac.size() || f < 0)
        throw ArgumentError("unparseable decimal: " + s);
      return Rational(w * den + (w < 0 ? -f : f), den);
    }
    std::size_t used = 0;
    const std::int64_t n = std::stoll(s, &used);
    if (used != s.size()) throw ArgumentError("unparseable rational: " + s);
    return Rational(n, 1);
  } catch (const std::invalid_argument&) {
    throw ArgumentError("unparseable rational: " + s);
  } catch (const std::out_of_range&) {
    throw ArgumentError("rational out of range: " + s);
  }
}

}  // namespace ccsched
