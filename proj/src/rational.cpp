#include "qcause/rational.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace qcause {

Rational pow2_rational(unsigned k) {
  BigInt n = BigInt(1) << k;
  return Rational(n);
}

double to_double(const Rational &q) { return q.convert_to<double>(); }

std::string format_fraction(const Rational &q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

std::string format_decimal(const Rational &q, int places) {
  if (places < 0) {
    throw std::invalid_argument("format_decimal: negative precision");
  }
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  bool negative = num < 0;
  if (negative) {
    num = -num;
  }
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) {
    scale *= 10;
  }
  // Round half away from zero on the last kept digit.
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = whole.str();
  if (places > 0) {
    std::string digits = frac.str();
    out += "." + std::string(places - digits.size(), '0') + digits;
  }
  if (negative && (whole != 0 || frac != 0)) {
    out = "-" + out;
  }
  return out;
}

std::string format_significant(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::optional<Rational> parse_rational(const std::string &text) {
  if (text.empty()) {
    return std::nullopt;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigInt num = 0;
  BigInt den = 1;
  bool any_digit = false;
  bool seen_point = false;
  bool seen_slash = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      any_digit = true;
      if (seen_slash) {
        den = den * 10 + (c - '0');
      } else {
        num = num * 10 + (c - '0');
        if (seen_point) {
          den *= 10;
        }
      }
    } else if (c == '.' && !seen_point && !seen_slash) {
      seen_point = true;
    } else if (c == '/' && !seen_slash && !seen_point && any_digit) {
      seen_slash = true;
      den = 0;
      any_digit = false;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit || den == 0) {
    return std::nullopt;
  }
  Rational q(num, den);
  return negative ? -q : q;
}

} // namespace qcause
