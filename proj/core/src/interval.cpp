#include "rigidtori/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rigidtori {

MpReal::MpReal(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}
MpReal::MpReal(const MpReal& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
MpReal::MpReal(MpReal&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
MpReal& MpReal::operator=(const MpReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
MpReal& MpReal::operator=(MpReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
MpReal::~MpReal() { mpfr_clear(v_); }

namespace {

constexpr mpfr_prec_t kBoundPrec = 53;

MpReal bound_zero() { return MpReal(kBoundPrec); }

MpReal abs_up(const MpReal& x) {
  MpReal r(kBoundPrec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

MpReal abs_down(const MpReal& x) {
  MpReal r(kBoundPrec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}

MpReal add_up(const MpReal& a, const MpReal& b) {
  MpReal r(kBoundPrec);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

MpReal mul_up(const MpReal& a, const MpReal& b) {
  MpReal r(kBoundPrec);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

/// 2^(shift - p) * sum |v| rounded up: covers the rounding error of a short
/// chain of correctly rounded p-bit operations whose intermediate magnitudes
/// are the v's.
MpReal rounding_bound(mpfr_prec_t p, int shift, std::initializer_list<const MpReal*> vs) {
  MpReal s = bound_zero();
  for (const MpReal* v : vs) s = add_up(s, abs_up(*v));
  mpfr_mul_2si(s.get(), s.get(), shift - static_cast<long>(p), MPFR_RNDU);
  return s;
}

/// |re| + |im|, an upper bound on the modulus of the midpoint.
MpReal modulus_up(const MpReal& re, const MpReal& im) { return add_up(abs_up(re), abs_up(im)); }

}  // namespace

CertifiedComplex::CertifiedComplex(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(kBoundPrec) {}

CertifiedComplex CertifiedComplex::from_rational(const Rational& q, mpfr_prec_t prec) {
  CertifiedComplex z(prec);
  const int inexact = mpfr_set_q(z.re_.get(), q.get_mpq_t(), MPFR_RNDN);
  if (inexact != 0) z.rad_ = rounding_bound(prec, 0, {&z.re_});
  return z;
}

CertifiedComplex CertifiedComplex::ball(const MpReal& re, const MpReal& im, double radius,
                                        mpfr_prec_t prec) {
  CertifiedComplex z(prec);
  mpfr_set(z.re_.get(), re.get(), MPFR_RNDN);
  mpfr_set(z.im_.get(), im.get(), MPFR_RNDN);
  MpReal r(kBoundPrec);
  mpfr_set_d(r.get(), radius, MPFR_RNDU);
  z.rad_ = add_up(r, rounding_bound(prec, 0, {&z.re_, &z.im_}));
  return z;
}

CertifiedComplex CertifiedComplex::root_of_unity(long k, long m, mpfr_prec_t prec) {
  if (m <= 0) throw std::invalid_argument("root_of_unity: nonpositive order");
  k %= m;
  if (k < 0) k += m;
  CertifiedComplex z(prec);
  // Exact cases first; they keep rational embeddings radius-free.
  if (k == 0) {
    mpfr_set_ui(z.re_.get(), 1, MPFR_RNDN);
    return z;
  }
  if (2 * k == m) {
    mpfr_set_si(z.re_.get(), -1, MPFR_RNDN);
    return z;
  }
  if (4 * k == m || 4 * k == 3 * m) {
    mpfr_set_si(z.im_.get(), 4 * k == m ? 1 : -1, MPFR_RNDN);
    return z;
  }
  // theta = 2 pi k / m at p + 16 bits: relative error a few ulps, absolute
  // error < 2^(-p-10). sin/cos are 1-Lipschitz and correctly rounded at p bits.
  MpReal theta(prec + 16);
  mpfr_const_pi(theta.get(), MPFR_RNDN);
  mpfr_mul_si(theta.get(), theta.get(), 2 * k, MPFR_RNDN);
  mpfr_div_si(theta.get(), theta.get(), m, MPFR_RNDN);
  mpfr_sin_cos(z.im_.get(), z.re_.get(), theta.get(), MPFR_RNDN);
  mpfr_set_ui_2exp(z.rad_.get(), 1, 2 - static_cast<long>(prec), MPFR_RNDU);
  return z;
}

CertifiedComplex operator+(const CertifiedComplex& a, const CertifiedComplex& b) {
  const mpfr_prec_t p = std::min(a.precision(), b.precision());
  CertifiedComplex z(p);
  mpfr_add(z.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_add(z.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  z.rad_ = add_up(add_up(a.rad_, b.rad_), rounding_bound(p, 0, {&z.re_, &z.im_}));
  return z;
}

CertifiedComplex operator-(const CertifiedComplex& a) {
  CertifiedComplex z = a;
  mpfr_neg(z.re_.get(), z.re_.get(), MPFR_RNDN);
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  return z;
}

CertifiedComplex operator-(const CertifiedComplex& a, const CertifiedComplex& b) { return a + (-b); }

CertifiedComplex operator*(const CertifiedComplex& a, const CertifiedComplex& b) {
  const mpfr_prec_t p = std::min(a.precision(), b.precision());
  CertifiedComplex z(p);
  MpReal t1(p), t2(p), t3(p), t4(p);
  mpfr_mul(t1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_mul(t4.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_sub(z.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_add(z.im_.get(), t3.get(), t4.get(), MPFR_RNDN);
  // |xy - x~y~| <= |x~| r_y + |y~| r_x + r_x r_y
  MpReal prop = add_up(add_up(mul_up(modulus_up(a.re_, a.im_), b.rad_),
                              mul_up(modulus_up(b.re_, b.im_), a.rad_)),
                       mul_up(a.rad_, b.rad_));
  z.rad_ = add_up(prop, rounding_bound(p, 1, {&t1, &t2, &t3, &t4, &z.re_, &z.im_}));
  return z;
}

CertifiedComplex CertifiedComplex::conj() const {
  CertifiedComplex z = *this;
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  return z;
}

CertifiedComplex CertifiedComplex::inverse() const {
  const mpfr_prec_t p = precision();
  // Lower bound on |midpoint|: max(|re|, |im|).
  MpReal lo = abs_down(re_);
  MpReal li = abs_down(im_);
  MpReal low = mpfr_cmp(lo.get(), li.get()) >= 0 ? lo : li;
  if (mpfr_cmp(low.get(), rad_.get()) <= 0) throw std::domain_error("inverse of a ball containing zero");
  CertifiedComplex z(p);
  MpReal n(p), t(p);
  mpfr_sqr(n.get(), re_.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), im_.get(), MPFR_RNDN);
  mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
  mpfr_div(z.re_.get(), re_.get(), n.get(), MPFR_RNDN);
  mpfr_div(z.im_.get(), im_.get(), n.get(), MPFR_RNDN);
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  // |1/x - 1/x~| <= r / (|x~| (|x~| - r)).
  MpReal gap(kBoundPrec), den(kBoundPrec), prop(kBoundPrec);
  mpfr_sub(gap.get(), low.get(), rad_.get(), MPFR_RNDD);
  mpfr_mul(den.get(), low.get(), gap.get(), MPFR_RNDD);
  mpfr_div(prop.get(), rad_.get(), den.get(), MPFR_RNDU);
  // Each midpoint component carries at most ~4 relative roundings.
  z.rad_ = add_up(prop, rounding_bound(p, 3, {&z.re_, &z.im_}));
  return z;
}

int CertifiedComplex::sign_real() const {
  if (mpfr_cmpabs(re_.get(), rad_.get()) <= 0) return 0;
  return mpfr_sgn(re_.get()) > 0 ? 1 : -1;
}

int CertifiedComplex::sign_imag() const {
  if (mpfr_cmpabs(im_.get(), rad_.get()) <= 0) return 0;
  return mpfr_sgn(im_.get()) > 0 ? 1 : -1;
}

bool CertifiedComplex::contains_zero() const {
  // Conservative: the ball is reported as containing zero unless its modulus
  // lower bound max(|re|, |im|) exceeds the radius.
  return mpfr_cmpabs(re_.get(), rad_.get()) <= 0 && mpfr_cmpabs(im_.get(), rad_.get()) <= 0;
}

namespace {

/// Upper bound on the distance between two midpoints.
MpReal distance_up(const CertifiedComplex& a, const CertifiedComplex& b) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision()) + 8;
  MpReal dr(p), di(p);
  mpfr_sub(dr.get(), a.re().get(), b.re().get(), MPFR_RNDN);
  mpfr_sub(di.get(), a.im().get(), b.im().get(), MPFR_RNDN);
  MpReal s(kBoundPrec), t(kBoundPrec);
  mpfr_sqr(s.get(), dr.get(), MPFR_RNDU);
  mpfr_sqr(t.get(), di.get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDU);
  // Each subtraction is rounded once.
  return add_up(s, rounding_bound(p, 1, {&dr, &di}));
}

MpReal distance_down(const CertifiedComplex& a, const CertifiedComplex& b) {
  const mpfr_prec_t p = std::max(a.precision(), b.precision()) + 8;
  MpReal dr(p), di(p);
  mpfr_sub(dr.get(), a.re().get(), b.re().get(), MPFR_RNDN);
  mpfr_sub(di.get(), a.im().get(), b.im().get(), MPFR_RNDN);
  MpReal s(kBoundPrec), t(kBoundPrec);
  mpfr_sqr(s.get(), dr.get(), MPFR_RNDD);
  mpfr_sqr(t.get(), di.get(), MPFR_RNDD);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDD);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDD);
  MpReal err = rounding_bound(p, 1, {&dr, &di});
  mpfr_sub(s.get(), s.get(), err.get(), MPFR_RNDD);
  return s;
}

}  // namespace

bool CertifiedComplex::inside(const CertifiedComplex& outer) const {
  MpReal reach = add_up(distance_up(*this, outer), rad_);
  return mpfr_cmp(reach.get(), outer.rad_.get()) < 0;
}

bool CertifiedComplex::overlaps(const CertifiedComplex& other) const {
  MpReal d = distance_down(*this, other);
  MpReal r = add_up(rad_, other.rad_);
  return mpfr_cmp(d.get(), r.get()) <= 0;
}

double CertifiedComplex::abs_upper() const {
  MpReal m = add_up(modulus_up(re_, im_), rad_);
  return mpfr_get_d(m.get(), MPFR_RNDU);
}

double CertifiedComplex::radius_upper() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

std::string CertifiedComplex::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << re_.to_double() << " + " << im_.to_double() << "i) +/- " << radius_upper();
  return os.str();
}

}  // namespace rigidtori
