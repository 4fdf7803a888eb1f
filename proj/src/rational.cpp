#include "nilbary/rational.hpp"

#include <stdexcept>

namespace nilbary {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto dot = text.find('.');
  if (dot == std::string::npos && text.find_first_of("eE") == std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
  }
  // Decimal input is read exactly as written, not through a double.
  std::string digits = text;
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.erase(0, 1);
  }
  if (digits.find_first_of("eE") != std::string::npos) {
    throw std::invalid_argument("exponent notation is not accepted for exact input: " + text);
  }
  dot = digits.find('.');
  std::string intpart = digits.substr(0, dot);
  std::string frac = digits.substr(dot + 1);
  std::string all = intpart + frac;
  if (all.empty() || all.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  mpz_class num(all, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(num, den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace nilbary
