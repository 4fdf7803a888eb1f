#pragma once

#include <gmpxx.h>

#include <string>

namespace nilbary {

using Rational = mpq_class;

/// Parses "3", "-1/12" or "0.25" style input into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

/// Coefficient-field glue shared by the templated tensor kernels.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static void scale(double& x, const Rational& q) { x *= q.get_d(); }
};

template <>
struct ScalarTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational from_rational(const Rational& q) { return q; }
  static void scale(Rational& x, const Rational& q) { x *= q; }
};

}  // namespace nilbary
