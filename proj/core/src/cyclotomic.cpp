#include "rigidtori/cyclotomic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rigidtori {

namespace {

long mod(long a, long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

constexpr mpfr_prec_t kStartPrecision = 64;
constexpr mpfr_prec_t kMaxPrecision = 16384;

}  // namespace

std::shared_ptr<const CyclotomicField> CyclotomicField::make(int m) {
  return std::shared_ptr<const CyclotomicField>(new CyclotomicField(m));
}

CyclotomicField::CyclotomicField(int m) : m_(m), phi_(euler_phi(m)), modulus_(cyclotomic_polynomial(m)) {
  for (int a = 0; a < m; ++a)
    if (std::gcd(a, m) == 1) units_.push_back(a);
  if (m == 1) units_ = {1};
  // z^k for k < phi is a basis vector; above that, x^phi = -sum_{i<phi} Phi_i x^i.
  powers_.assign(m, std::vector<Rational>(phi_, Rational(0)));
  std::vector<Rational> cur(phi_, Rational(0));
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    powers_[k] = cur;
    // multiply by x
    Rational top = cur[phi_ - 1];
    for (int i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (sgn(top) != 0)
      for (int i = 0; i < phi_; ++i) cur[i] -= top * modulus_.coeff(i);
  }
}

const std::vector<Rational>& CyclotomicField::power(long k) const { return powers_[mod(k, m_)]; }

CyclotomicNumber CyclotomicField::zero() const {
  return CyclotomicNumber(shared_from_this(), std::vector<Rational>(phi_, Rational(0)));
}

CyclotomicNumber CyclotomicField::one() const { return from_rational(1); }

CyclotomicNumber CyclotomicField::zeta(long k) const { return CyclotomicNumber(shared_from_this(), power(k)); }

CyclotomicNumber CyclotomicField::from_rational(const Rational& q) const {
  std::vector<Rational> c(phi_, Rational(0));
  c[0] = q;
  return CyclotomicNumber(shared_from_this(), std::move(c));
}

CyclotomicNumber CyclotomicField::from_coeffs(std::vector<Rational> c) const {
  if (static_cast<int>(c.size()) != phi_)
    throw std::invalid_argument("cyclotomic coefficient vector has wrong length");
  return CyclotomicNumber(shared_from_this(), std::move(c));
}

CyclotomicNumber CyclotomicField::from_powers(const std::vector<Rational>& c) const {
  std::vector<Rational> out(phi_, Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    const auto& p = power(static_cast<long>(k));
    for (int i = 0; i < phi_; ++i)
      if (sgn(p[i]) != 0) out[i] += c[k] * p[i];
  }
  return CyclotomicNumber(shared_from_this(), std::move(out));
}

int CyclotomicField::normalize_unit(long a) const {
  const long r = mod(a, m_);
  if (std::gcd(r, static_cast<long>(m_)) != 1 && m_ != 1)
    throw std::invalid_argument("embedding residue not coprime to conductor");
  return m_ == 1 ? 1 : static_cast<int>(r);
}

CyclotomicNumber::CyclotomicNumber(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {}

int CyclotomicNumber::conductor() const { return field_ ? field_->conductor() : 1; }

bool CyclotomicNumber::is_zero() const {
  for (const auto& x : c_)
    if (sgn(x) != 0) return false;
  return true;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational CyclotomicNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic number is not rational");
  return c_.empty() ? Rational(0) : c_[0];
}

bool CyclotomicNumber::is_integral() const {
  // Power basis is an integral basis of Z[zeta_m].
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

void CyclotomicNumber::check_same_field(const CyclotomicNumber& o) const {
  if (!field_ || !o.field_) throw std::logic_error("cyclotomic number without a field");
  if (field_ != o.field_ && field_->conductor() != o.field_->conductor())
    throw std::invalid_argument("cyclotomic conductor mismatch");
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
  check_same_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
  check_same_field(o);
  const std::size_t n = c_.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(o.c_[j]) != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  const QPoly& f = field_->modulus();
  for (std::size_t k = prod.size(); k-- > n;) {
    if (sgn(prod[k]) == 0) continue;
    const Rational top = prod[k];
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] -= top * f.coeff(i);
    prod[k] = 0;
  }
  prod.resize(n);
  c_ = std::move(prod);
  return *this;
}

CyclotomicNumber operator-(CyclotomicNumber a) {
  for (auto& x : a.c_) x = -x;
  return a;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in a cyclotomic field");
  ExtendedGcd eg = extended_gcd(QPoly(c_), field_->modulus());
  if (eg.g.degree() != 0) throw std::logic_error("cyclotomic inverse: modulus not coprime");
  std::vector<Rational> c(c_.size(), Rational(0));
  for (int i = 0; i <= eg.s.degree(); ++i) c[i] = eg.s.coeff(i);
  CyclotomicNumber out(field_, std::move(c));
  // s may exceed degree phi-1 only if deg(a) >= phi, which cannot happen.
  return out;
}

CyclotomicNumber CyclotomicNumber::galois(long a) const {
  const int m = field_->conductor();
  const int r = field_->normalize_unit(a);
  std::vector<Rational> out(c_.size(), Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    const auto& p = field_->power(static_cast<long>(r) * static_cast<long>(j) % m);
    for (std::size_t i = 0; i < out.size(); ++i)
      if (sgn(p[i]) != 0) out[i] += c_[j] * p[i];
  }
  return CyclotomicNumber(field_, std::move(out));
}

CyclotomicNumber CyclotomicNumber::conjugate() const { return galois(-1); }

long ramanujan_sum(int m, long j) {
  const long g = std::gcd(mod(j, m) == 0 ? static_cast<long>(m) : mod(j, m), static_cast<long>(m));
  const int q = static_cast<int>(m / g);
  return static_cast<long>(mobius(q)) * euler_phi(m) / euler_phi(q);
}

Rational CyclotomicNumber::trace() const {
  Rational t = 0;
  for (std::size_t j = 0; j < c_.size(); ++j)
    if (sgn(c_[j]) != 0) t += c_[j] * ramanujan_sum(field_->conductor(), static_cast<long>(j));
  return t;
}

CyclotomicNumber CyclotomicNumber::lift(const FieldPtr& target) const {
  const int m = conductor(), big = target->conductor();
  if (big % m != 0) throw std::invalid_argument("lift: target conductor is not a multiple");
  const int step = big / m;
  std::vector<Rational> powers(static_cast<std::size_t>(step) * c_.size() + 1, Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) powers[j * step] = c_[j];
  return target->from_powers(powers);
}

CertifiedComplex CyclotomicNumber::embed(long a, mpfr_prec_t precision) const {
  const int m = field_->conductor();
  const int r = field_->normalize_unit(a);
  CertifiedComplex acc(precision);
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    const long k = static_cast<long>(r) * static_cast<long>(j) % m;
    acc = acc + CertifiedComplex::from_rational(c_[j], precision) * CertifiedComplex::root_of_unity(k, m, precision);
  }
  return acc;
}

std::complex<double> CyclotomicNumber::embed_double(long a) const {
  const int m = field_->conductor();
  const int r = field_->normalize_unit(a);
  std::complex<double> acc = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    const double theta = 2.0 * M_PI * static_cast<double>(static_cast<long>(r) * static_cast<long>(j) % m) / m;
    acc += c_[j].get_d() * std::polar(1.0, theta);
  }
  return acc;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.conductor() != b.conductor()) throw std::invalid_argument("cyclotomic conductor mismatch");
  return a.c_ == b.c_;
}

bool operator<(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string CyclotomicNumber::str(const std::string& var) const {
  std::vector<Rational> c = c_;
  return QPoly(std::move(c)).str(var);
}

int certified_sign_imag(const CyclotomicNumber& x, long a) {
  if (x == x.conjugate()) return 0;
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    const int s = x.embed(a, p).sign_imag();
    if (s != 0) return s;
  }
  throw std::logic_error("certified_sign_imag: precision cap reached");
}

int certified_sign_real(const CyclotomicNumber& x, long a) {
  if (x == -x.conjugate()) return 0;
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    const int s = x.embed(a, p).sign_real();
    if (s != 0) return s;
  }
  throw std::logic_error("certified_sign_real: precision cap reached");
}

}  // namespace rigidtori
