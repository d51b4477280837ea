#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace rigidtori {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in canonical form (mpq_class's two-argument constructor does not
/// canonicalize).
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Renders `q` as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

/// Field policy for the generic exact linear algebra in matrix.hpp.
struct Rationals {
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
};

struct Integers {
  Integer zero() const { return Integer(0); }
  Integer one() const { return Integer(1); }
};

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

/// Continued-fraction convergents of x with denominator at most max_den,
/// in order of increasing denominator. x is taken as the exact rational value
/// of the double.
std::vector<Rational> convergents(double x, const Integer& max_den);

/// Last convergent of x with denominator <= max_den.
Rational best_rational(double x, const Integer& max_den);

/// Least common multiple of the denominators of `values`.
Integer common_denominator(const std::vector<Rational>& values);

/// Gcd of the numerators of `values` (0 if all are zero).
Integer content(const std::vector<Rational>& values);

}  // namespace rigidtori
