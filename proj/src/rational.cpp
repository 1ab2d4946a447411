#include "dispgrid/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dispgrid {

BigInt pow2(unsigned exponent) {
  BigInt out = 1;
  out <<= exponent;
  return out;
}

Rational dyadic(const BigInt& numerator, unsigned exponent) {
  return Rational(numerator, pow2(exponent));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  const auto fail = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    try {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw fail();
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      throw fail();
    }
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  BigInt digits = 0;
  long scale = 0;
  bool any_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits = digits * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits = digits * 10 + (text[i] - '0');
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) throw fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    long exponent = 0;
    bool any_exp = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      any_exp = true;
      if (exponent > 100000) throw fail();
    }
    if (!any_exp) throw fail();
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) throw fail();

  BigInt ten_pow = 1;
  for (long j = 0; j < (scale < 0 ? -scale : scale); ++j) ten_pow *= 10;
  Rational out = scale < 0 ? Rational(digits, ten_pow) : Rational(digits * ten_pow);
  return negative ? Rational(-out) : out;
}

}  // namespace dispgrid
