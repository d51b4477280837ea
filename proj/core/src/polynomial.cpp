#include "rigidtori/polynomial.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rigidtori {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::from_integers(const std::vector<long long>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.emplace_back(static_cast<long>(c));
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational QPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x = -x;
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const Rational& s) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= s;
  return QPoly(std::move(v));
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const bool unit = mag == 1;
    if (!unit || i == 0) os << to_string(mag);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

QPolyDivision divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1, Rational(0));
  const Rational lead_inv = Rational(1) / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(r[i]) == 0) continue;
    const Rational f = r[i] * lead_inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).remainder; }

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtendedGcd extended_gcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    QPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Rational inv = Rational(1) / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

int euler_phi(int m) {
  if (m <= 0) throw std::invalid_argument("euler_phi: nonpositive argument");
  int result = m, n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

int mobius(int m) {
  int n = m, mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

QPoly cyclotomic_polynomial(int m) {
  if (m <= 0) throw std::invalid_argument("cyclotomic_polynomial: nonpositive conductor");
  // Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}
  QPoly num = QPoly::constant(1), den = QPoly::constant(1);
  for (int d = 1; d <= m; ++d) {
    if (m % d) continue;
    const int mu = mobius(m / d);
    if (mu == 0) continue;
    QPoly f = QPoly::monomial(1, d) - QPoly::constant(1);
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
  }
  auto [q, r] = divmod(num, den);
  if (!r.is_zero()) throw std::logic_error("cyclotomic_polynomial: inexact division");
  return q;
}

namespace {

int sign_at(const QPoly& p, const Rational& x) { return sgn(p(x)); }

int sign_at_infinity(const QPoly& p, bool positive) {
  if (p.is_zero()) return 0;
  int s = sgn(p.leading());
  if (!positive && p.degree() % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int count_real_roots(const QPoly& p) {
  if (p.degree() <= 0) return 0;
  QPoly sq = divmod(p, gcd(p, p.derivative())).quotient;
  if (sq.degree() <= 0) return 0;
  std::vector<QPoly> chain{sq, sq.derivative()};
  while (!chain.back().is_zero()) {
    QPoly r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  std::vector<int> lo, hi;
  for (const auto& q : chain) {
    lo.push_back(sign_at_infinity(q, false));
    hi.push_back(sign_at_infinity(q, true));
  }
  (void)sign_at;
  return variations(lo) - variations(hi);
}

QPoly characteristic_polynomial(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  std::vector<std::vector<Rational>> mk(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    // mk <- A * mk + c[n-k+1] I
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (sgn(m[i][l]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += m[i][l] * mk[l][j];
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += m[i][l] * mk[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return QPoly(std::move(c));
}

}  // namespace rigidtori
