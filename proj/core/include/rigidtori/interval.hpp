#pragma once

// Ball arithmetic over MPFR: a midpoint in C at a working precision plus an
// upper bound on the modulus of the error. Every operation rounds the bound
// outward, so the true value always stays inside.

#include <mpfr.h>

#include <complex>
#include <string>

#include "rigidtori/rational.hpp"

namespace rigidtori {

/// Owning wrapper around mpfr_t.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec = 53);
  MpReal(const MpReal& o);
  MpReal(MpReal&& o) noexcept;
  MpReal& operator=(const MpReal& o);
  MpReal& operator=(MpReal&& o) noexcept;
  ~MpReal();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

 private:
  mpfr_t v_;
};

class CertifiedComplex {
 public:
  explicit CertifiedComplex(mpfr_prec_t prec);

  static CertifiedComplex from_rational(const Rational& q, mpfr_prec_t prec);
  /// Ball with the given midpoint (rounded to `prec`) and radius at least `radius`.
  static CertifiedComplex ball(const MpReal& re, const MpReal& im, double radius, mpfr_prec_t prec);
  /// exp(2 pi i k / m).
  static CertifiedComplex root_of_unity(long k, long m, mpfr_prec_t prec);

  const MpReal& re() const { return re_; }
  const MpReal& im() const { return im_; }
  /// Bound on |true value - midpoint| (53-bit, rounded up).
  const MpReal& radius() const { return rad_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  friend CertifiedComplex operator+(const CertifiedComplex& a, const CertifiedComplex& b);
  friend CertifiedComplex operator-(const CertifiedComplex& a, const CertifiedComplex& b);
  friend CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b);
  friend CertifiedComplex operator-(const CertifiedComplex& a);
  /// Throws std::domain_error if the ball contains zero.
  CertifiedComplex inverse() const;
  friend CertifiedComplex operator/(const CertifiedComplex& a, const CertifiedComplex& b) {
    return a * b.inverse();
  }
  CertifiedComplex conj() const;

  /// +1/-1 if the real (imaginary) part is certainly of that sign, 0 if the
  /// ball straddles the axis (undecided, not "zero").
  int sign_real() const;
  int sign_imag() const;
  bool contains_zero() const;
  /// True if every point of this ball lies inside `outer`.
  bool inside(const CertifiedComplex& outer) const;
  /// True if the two balls can contain a common point.
  bool overlaps(const CertifiedComplex& other) const;
  /// Upper bound on |z| over the ball.
  double abs_upper() const;
  double radius_upper() const;

  std::complex<double> midpoint() const { return {re_.to_double(), im_.to_double()}; }
  std::string str() const;

 private:
  MpReal re_, im_, rad_;
};

}  // namespace rigidtori
