#pragma once

#include <string>
#include <vector>

#include "rigidtori/rational.hpp"

namespace rigidtori {

/// Dense univariate polynomial over Q, coefficients from the constant term up.
/// Always trimmed: the zero polynomial has no coefficients.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, std::size_t degree);
  static QPoly from_integers(const std::vector<long long>& coeffs);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const Rational& s);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct QPolyDivision {
  QPoly quotient;
  QPoly remainder;
};

QPolyDivision divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);

/// Returns (g, s, t) with s a + t b = g = gcd(a, b) (g monic).
struct ExtendedGcd {
  QPoly g, s, t;
};
ExtendedGcd extended_gcd(const QPoly& a, const QPoly& b);

/// The m-th cyclotomic polynomial.
QPoly cyclotomic_polynomial(int m);

/// Euler's totient.
int euler_phi(int m);
int mobius(int m);

/// Sturm count of distinct real roots of p (p need not be squarefree).
int count_real_roots(const QPoly& p);

/// Characteristic polynomial det(x I - m) of a square rational matrix given
/// row-major, via Faddeev-LeVerrier.
QPoly characteristic_polynomial(const std::vector<std::vector<Rational>>& m);

}  // namespace rigidtori
