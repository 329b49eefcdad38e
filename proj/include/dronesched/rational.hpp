#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace dronesched {

// Exact arbitrary-precision rational. Every time value and cost in the
// library is one of these; there is no floating-point comparison anywhere
// on the scheduling path.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

using TimePoint = Rational;
using Cost = Rational;

// Canonical text form: "n" for integers, "n/d" otherwise (d > 0, reduced).
inline std::string to_string(const Rational& value) { return value.str(); }

// Accepts "n", "n/d", and finite decimals "a.b" (optionally signed).
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) return fail();
    BigInt d{std::string(den)};
    if (d == 0) return fail();
    result = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!is_digits(whole) || !is_digits(frac)) return fail();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    result = Rational(BigInt(std::string(whole)) * scale + BigInt(std::string(frac)), scale);
  } else {
    if (!is_digits(body)) return fail();
    result = Rational(BigInt(std::string(body)));
  }
  return negative ? Rational(-result) : result;
}

inline BigInt floor_int(const Rational& value) {
  const BigInt n = boost::multiprecision::numerator(value);
  const BigInt d = boost::multiprecision::denominator(value);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline BigInt ceil_int(const Rational& value) { return -floor_int(-value); }

// Smallest multiple of `quantum` that is >= value.
inline Rational ceil_to_grid(const Rational& value, const Rational& quantum) {
  return Rational(ceil_int(value / quantum)) * quantum;
}

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace dronesched
