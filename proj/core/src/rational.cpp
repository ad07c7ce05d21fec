#include "convexstate/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "convexstate/errors.hpp"

namespace convexstate {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("invalid number \"" + std::string(whole) + "\"");
  cpp_int value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("invalid number \"" + std::string(whole) + "\"");
    value = value * 10 + (c - '0');
  }
  return value;
}

cpp_int pow10(long exponent) {
  cpp_int p = 1;
  for (long i = 0; i < exponent; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    const cpp_int magnitude = parse_integer(exp_text, whole);
    if (magnitude > 4000) throw ParseError("exponent out of range in \"" + std::string(whole) + "\"");
    exponent = magnitude.convert_to<long>();
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    const std::string_view integral = text.substr(0, dot);
    if (integral.empty() && frac.empty()) throw ParseError("invalid number \"" + std::string(whole) + "\"");
    digits = std::string(integral) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(text);
  }
  Rational value(parse_integer(digits, whole));
  if (exponent >= 0) {
    value *= pow10(exponent);
  } else {
    value /= pow10(-exponent);
  }
  return negative ? -value : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(text.substr(0, slash), text);
    const Rational den = parse_decimal(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    return num / den;
  }
  return parse_decimal(text, text);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("exact_rational: non-finite value");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits fit in a 64-bit integer exactly.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  exp -= 53;
  cpp_int p = 1;
  p <<= std::abs(exp);
  if (exp >= 0) {
    r *= p;
  } else {
    r /= p;
  }
  return r;
}

}  // namespace convexstate
