#include <cmath>
#include <random>

#include "doctest.h"
#include "rigidtori/cyclotomic.hpp"
#include "rigidtori/subfield.hpp"

using namespace rigidtori;

namespace {

CyclotomicNumber random_element(const FieldPtr& f, std::mt19937_64& gen) {
  std::vector<Rational> c;
  for (int i = 0; i < f->degree(); ++i)
    c.push_back(ratio(static_cast<long>(gen() % 19) - 9, static_cast<long>(gen() % 5) + 1));
  return f->from_coeffs(c);
}

// sqrt(3)/2 etc. at `prec` bits, straight from MPFR
CertifiedComplex mpfr_point(double re_num, long re_den, int im_sqrt_arg, double im_scale, mpfr_prec_t prec) {
  MpReal re(prec), im(prec);
  mpfr_set_d(re.get(), re_num, MPFR_RNDN);
  mpfr_div_si(re.get(), re.get(), re_den, MPFR_RNDN);
  mpfr_set_si(im.get(), im_sqrt_arg, MPFR_RNDN);
  mpfr_sqrt(im.get(), im.get(), MPFR_RNDN);
  mpfr_mul_d(im.get(), im.get(), im_scale, MPFR_RNDN);
  return CertifiedComplex::ball(re, im, std::ldexp(1.0, -static_cast<int>(prec) + 4), prec);
}

}  // namespace

TEST_CASE("cyclotomic arithmetic on small conductors") {
  const auto q4 = CyclotomicField::make(4);
  CHECK(q4->zeta() * q4->zeta() == q4->from_rational(-1));
  const auto q3 = CyclotomicField::make(3);
  CHECK(q3->zeta(1) + q3->zeta(2) == q3->from_rational(-1));
  CHECK(q4->zeta().conjugate() == -q4->zeta());
  CHECK(q4->from_rational(ratio(3, 7)).conjugate() == q4->from_rational(ratio(3, 7)));
}

TEST_CASE("field axioms and conjugation on random elements") {
  std::mt19937_64 gen(11);
  for (int m : {3, 4, 5, 7, 8, 9, 12, 15, 16}) {
    const auto f = CyclotomicField::make(m);
    for (int k = 0; k < 10; ++k) {
      const CyclotomicNumber x = random_element(f, gen), y = random_element(f, gen);
      if (!x.is_zero()) CHECK(x * x.inverse() == f->one());
      CHECK((x * y).conjugate() == x.conjugate() * y.conjugate());
      CHECK(x.conjugate().conjugate() == x);
      for (int a : f->units()) CHECK(certified_sign_imag(x, a) == -certified_sign_imag(x, -a));
    }
  }
}

TEST_CASE("cyclotomic polynomial divides x^m - 1 and has degree phi(m)") {
  for (int m = 1; m <= 40; ++m) {
    const auto f = CyclotomicField::make(m);
    int phi = 0;
    for (int a = 1; a <= m; ++a) phi += std::gcd(a, m) == 1;
    CHECK(f->degree() == phi);
    CHECK(f->modulus().degree() == phi);
    CHECK(f->modulus().leading() == 1);
    const QPoly xm = QPoly::monomial(Rational(1), m) - QPoly::constant(Rational(1));
    CHECK((xm % f->modulus()).is_zero());
  }
}

TEST_CASE("embeddings are certified enclosures") {
  const auto q4 = CyclotomicField::make(4);
  const auto i1 = q4->zeta().embed(1, 128);
  CHECK(i1.overlaps(mpfr_point(0, 1, 1, 1.0, 200)));
  CHECK(i1.radius_upper() < std::ldexp(1.0, -100));
  CHECK(q4->one().embed(3, 128).overlaps(CertifiedComplex::from_rational(Rational(1), 200)));
  const auto q3 = CyclotomicField::make(3);
  const auto w2 = q3->zeta().embed(2, 128);
  CHECK(w2.overlaps(mpfr_point(-1, 2, 3, -0.5, 200)));
  CHECK(!w2.overlaps(mpfr_point(-1, 2, 3, 0.5, 200)));

  CHECK(certified_sign_imag(q4->zeta(), 1) == 1);
  CHECK(certified_sign_imag(q4->zeta(), 3) == -1);
  CHECK(certified_sign_imag(q4->one(), 1) == 0);

  // higher precision gives a smaller ball around the same value
  std::mt19937_64 gen(5);
  const auto f = CyclotomicField::make(7);
  const CyclotomicNumber x = random_element(f, gen), y = random_element(f, gen);
  const auto lo = (x * y).embed(2, 64), hi = (x * y).embed(2, 256);
  CHECK(hi.radius_upper() <= lo.radius_upper());
  CHECK(hi.overlaps(lo));
  CHECK((x * y).embed(2, 128).overlaps(x.embed(2, 128) * y.embed(2, 128)));
}

TEST_CASE("sum of embeddings encloses the exact trace") {
  std::mt19937_64 gen(3);
  for (int m : {5, 8, 12}) {
    const auto f = CyclotomicField::make(m);
    const CyclotomicNumber x = random_element(f, gen);
    CertifiedComplex sum = CertifiedComplex::from_rational(Rational(0), 128);
    for (int a : f->units()) sum = sum + x.embed(a, 128);
    CHECK(sum.overlaps(CertifiedComplex::from_rational(x.trace(), 128)));
  }
}

TEST_CASE("subfields are fixed fields of the right degree") {
  const auto f = CyclotomicField::make(12);
  for (const std::vector<int>& h : {std::vector<int>{1}, {1, 11}, {1, 5}, {1, 7}, {1, 5, 7, 11}}) {
    const SubfieldSpec s(f, h);
    CHECK(s.degree() * static_cast<int>(h.size()) == f->degree());
    for (const auto& b : s.basis())
      for (int a : h) CHECK(b.galois(a) == b);
  }
  CHECK(SubfieldSpec(f, {1, 11}).kind() == FieldKind::TotallyReal);
  CHECK(SubfieldSpec(f, {1, 5}).kind() == FieldKind::CM);
}

TEST_CASE("continued fraction convergents") {
  const auto c = convergents(M_PI, Integer(200));
  REQUIRE(c.size() >= 4);
  CHECK(c[0] == Rational(3));
  CHECK(c[1] == ratio(22, 7));
  CHECK(c[2] == ratio(333, 106));
  CHECK(c[3] == ratio(355, 113));
  CHECK(best_rational(0.5, Integer(10)) == ratio(1, 2));
}
