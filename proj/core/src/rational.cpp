#include "rigidtori/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace rigidtori {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  auto check_int = [&](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational: " + text);
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed rational: " + text);
  };
  if (slash == std::string::npos) {
    check_int(text);
    return Rational(Integer(text[0] == '+' ? text.substr(1) : text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  Integer d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational q(Integer(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return q;
}

std::vector<Rational> convergents(double x, const Integer& max_den) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  Rational rest(x);  // exact value of the double
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    Integer h = a * h1 + h2;
    Integer k = a * k1 + k2;
    if (k > max_den) break;
    out.emplace_back(h, k);
    out.back().canonicalize();
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
  }
  return out;
}

Rational best_rational(double x, const Integer& max_den) {
  auto cs = convergents(x, max_den);
  if (cs.empty()) return Rational(0);
  return cs.back();
}

Integer common_denominator(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Integer content(const std::vector<Rational>& values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  return g;
}

}  // namespace rigidtori
