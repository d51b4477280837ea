#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "rigidtori/interval.hpp"
#include "rigidtori/polynomial.hpp"
#include "rigidtori/rational.hpp"

namespace rigidtori {

class CyclotomicNumber;

/// Q(zeta_m) in the power basis 1, z, ..., z^(phi(m)-1) modulo Phi_m.
/// Always handled through shared_ptr so numbers can refer back to it; also
/// serves as the field policy for Matrix<CyclotomicNumber>.
class CyclotomicField : public std::enable_shared_from_this<CyclotomicField> {
 public:
  static std::shared_ptr<const CyclotomicField> make(int m);

  int conductor() const { return m_; }
  int degree() const { return phi_; }
  const QPoly& modulus() const { return modulus_; }
  /// Residues a in [1, m) (or {1} for m = 1) coprime to m, ascending.
  const std::vector<int>& units() const { return units_; }
  /// Power-basis coordinates of z^k, k taken mod m.
  const std::vector<Rational>& power(long k) const;

  CyclotomicNumber zero() const;
  CyclotomicNumber one() const;
  /// z^k.
  CyclotomicNumber zeta(long k = 1) const;
  CyclotomicNumber from_rational(const Rational& q) const;
  CyclotomicNumber from_coeffs(std::vector<Rational> c) const;
  /// Reduces an arbitrary-length coefficient vector (in powers of z) mod Phi_m.
  CyclotomicNumber from_powers(const std::vector<Rational>& c) const;

  /// a mod m normalized to [0, m); throws if gcd(a, m) != 1.
  int normalize_unit(long a) const;

 private:
  explicit CyclotomicField(int m);
  int m_;
  int phi_;
  QPoly modulus_;
  std::vector<int> units_;
  std::vector<std::vector<Rational>> powers_;  // z^k for k in [0, m)
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

class CyclotomicNumber {
 public:
  /// A detached zero with no field; only valid as a placeholder.
  CyclotomicNumber() = default;
  CyclotomicNumber(FieldPtr field, std::vector<Rational> coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  int conductor() const;

  bool is_zero() const;
  bool is_rational() const;
  /// Throws std::domain_error unless is_rational().
  Rational rational_value() const;
  bool is_integral() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const CyclotomicNumber& o);
  CyclotomicNumber& operator*=(const Rational& q);
  CyclotomicNumber& operator/=(const CyclotomicNumber& o) { return *this *= o.inverse(); }

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
  friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& q) { return a *= q; }
  friend CyclotomicNumber operator*(const Rational& q, CyclotomicNumber a) { return a *= q; }
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a);

  /// Throws std::domain_error on zero.
  CyclotomicNumber inverse() const;
  /// Image under z -> z^-1.
  CyclotomicNumber conjugate() const;
  /// Image under sigma_a: z -> z^a, gcd(a, m) = 1.
  CyclotomicNumber galois(long a) const;
  /// Tr_{Q(zeta_m)/Q}.
  Rational trace() const;
  /// Same number viewed in Q(zeta_M), M a multiple of the conductor.
  CyclotomicNumber lift(const FieldPtr& target) const;

  CertifiedComplex embed(long a, mpfr_prec_t precision) const;
  std::complex<double> embed_double(long a) const;

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }
  /// Lexicographic on coefficient vectors; used only for canonical ordering.
  friend bool operator<(const CyclotomicNumber& a, const CyclotomicNumber& b);

  std::string str(const std::string& var = "z") const;

 private:
  void check_same_field(const CyclotomicNumber& o) const;
  FieldPtr field_;
  std::vector<Rational> c_;
};

inline bool is_zero(const CyclotomicNumber& x) { return x.is_zero(); }

/// Exact sign of Im sigma_a(x): the zero case is decided by x == conjugate(x),
/// nonzero signs by embedding at doubling precision (64 .. 16384 bits).
int certified_sign_imag(const CyclotomicNumber& x, long a);
/// Exact sign of Re sigma_a(x), zero decided by x == -conjugate(x).
int certified_sign_real(const CyclotomicNumber& x, long a);

/// Ramanujan sum c_m(j) = sum over units a of z^(aj) (a rational integer).
long ramanujan_sum(int m, long j);

}  // namespace rigidtori
