#include "rigidtori/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "rigidtori/errors.hpp"
#include "rigidtori/lattice.hpp"
#include "rigidtori/matrix.hpp"

namespace rigidtori {

namespace {

// ---- polynomials over F_p, coefficients from the constant term up ----

using ModPoly = std::vector<long>;

long mod(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

long inverse_mod(long a, long p) {
  long r0 = p, r1 = mod(a, p), s0 = 0, s1 = 1;
  while (r1) {
    const long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return mod(s0, p);
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly poly_rem(ModPoly a, const ModPoly& b, long p) {
  const long inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const long c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - c * b[i], p);
    trim(a);
  }
  return a;
}

ModPoly poly_div(ModPoly a, const ModPoly& b, long p) {
  const long inv = inverse_mod(b.back(), p);
  ModPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    const long c = a.back() * inv % p;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - c * b[i], p);
    trim(a);
  }
  return q;
}

ModPoly poly_mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  trim(out);
  return poly_rem(out, m, p);
}

ModPoly poly_gcd(ModPoly a, ModPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

ModPoly poly_pow_mod(ModPoly base, long e, const ModPoly& m, long p) {
  ModPoly result{1};
  base = poly_rem(base, m, p);
  while (e > 0) {
    if (e & 1) result = poly_mul_mod(result, base, m, p);
    base = poly_mul_mod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---- ball polynomials ----

using BallPoly = std::vector<CertifiedComplex>;

CertifiedComplex point(const MpReal& re, const MpReal& im, mpfr_prec_t prec) {
  return CertifiedComplex::ball(re, im, 0.0, prec);
}

CertifiedComplex horner(const QPoly& f, const CertifiedComplex& z, mpfr_prec_t prec) {
  CertifiedComplex acc(prec);
  for (int i = f.degree(); i >= 0; --i) acc = acc * z + CertifiedComplex::from_rational(f.coeff(i), prec);
  return acc;
}

/// Multiplies by (t - a).
BallPoly times_linear(const BallPoly& p, const CertifiedComplex& a, mpfr_prec_t prec) {
  BallPoly out(p.size() + 1, CertifiedComplex(prec));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] = out[i + 1] + p[i];
    out[i] = out[i] - a * p[i];
  }
  return out;
}

/// The unique integer in the ball, or nullopt if the ball certainly contains
/// none. Throws std::range_error when the radius is too large to decide.
std::optional<Integer> ball_integer(const CertifiedComplex& z) {
  if (z.sign_imag() != 0) return std::nullopt;
  const double r = z.radius_upper();
  if (r >= 0.5) throw std::range_error("ball too wide");
  MpReal rounded(z.re().precision());
  mpfr_rint(rounded.get(), z.re().get(), MPFR_RNDN);
  MpReal diff(z.re().precision());
  mpfr_sub(diff.get(), z.re().get(), rounded.get(), MPFR_RNDU);
  mpfr_abs(diff.get(), diff.get(), MPFR_RNDU);
  if (mpfr_cmp_d(diff.get(), r * (1 + 1e-9) + 1e-300) > 0) return std::nullopt;
  Integer out;
  mpfr_get_z(out.get_mpz_t(), rounded.get(), MPFR_RNDN);
  return out;
}

Rational exact_determinant(RatMatrix m) {
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

}  // namespace

std::vector<int> factor_degrees_mod_p(const QPoly& f, long p) {
  ModPoly a;
  for (const auto& c : f.coeffs()) {
    Integer r = c.get_num() % p;
    a.push_back(mod(r.get_si(), p));
  }
  trim(a);
  if (static_cast<int>(a.size()) - 1 != f.degree()) return {};
  ModPoly da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(static_cast<long>(i) * a[i] % p);
  trim(da);
  if (da.empty() || poly_gcd(a, da, p).size() != 1) return {};
  std::vector<int> degrees;
  ModPoly rest = a;
  ModPoly h{0, 1};  // x^(p^d) mod rest
  for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
    h = poly_pow_mod(h, p, rest, p);
    ModPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = mod(hx[1] - 1, p);
    trim(hx);
    const ModPoly g = poly_gcd(rest, hx, p);
    const int gd = static_cast<int>(g.size()) - 1;
    if (gd > 0) {
      for (int k = 0; k < gd / d; ++k) degrees.push_back(d);
      rest = poly_div(rest, g, p);
      h = poly_rem(h, rest, p);
    }
  }
  if (rest.size() > 1) degrees.push_back(static_cast<int>(rest.size()) - 1);
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

PolynomialField PolynomialField::make(const QPoly& f) {
  if (f.degree() < 1 || f.degree() > 16) throw InputError("polynomial degree must be between 1 and 16");
  if (f.leading() != 1) throw InputError("polynomial must be monic");
  for (const auto& c : f.coeffs())
    if (c.get_den() != 1) throw InputError("polynomial must have integer coefficients");
  PolynomialField F;
  F.f_ = f;
  const int n = f.degree();
  F.real_roots_ = count_real_roots(f);
  if (n == 1) {
    F.proof_ = "linear";
  } else {
    const QPoly g = gcd(f, f.derivative());
    if (g.degree() > 0)
      throw Error("ReduciblePolynomial", "polynomial has a repeated factor", {{"factor", g.str()}});
  }
  F.isolate_roots();

  if (n > 1) {
    // Factor degrees allowed by every prime: subset sums of each mod-p pattern.
    std::set<int> possible;
    for (int k = 1; k < n; ++k) possible.insert(k);
    for (long p = 2; p < 2000 && !possible.empty(); ++p) {
      if (!is_prime(p)) continue;
      const auto pattern = factor_degrees_mod_p(f, p);
      if (pattern.empty()) continue;
      std::set<int> sums{0};
      for (int d : pattern) {
        std::set<int> next = sums;
        for (int s : sums) next.insert(s + d);
        sums = std::move(next);
      }
      for (auto it = possible.begin(); it != possible.end();)
        it = sums.count(*it) ? std::next(it) : possible.erase(it);
    }
    if (possible.empty()) {
      F.proof_ = "mod-p sieve";
    } else {
      // Any factor of degree k is a product of k root factors with integer coefficients.
      F.proof_ = "root recombination";
      for (int k : possible) {
        if (2 * k > n) continue;
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
          BallPoly prod{CertifiedComplex::from_rational(1, F.prec_)};
          for (int i : idx) prod = times_linear(prod, F.roots_[i], F.prec_);
          std::vector<Rational> coeffs;
          bool integral = true;
          for (const auto& c : prod) {
            const auto z = ball_integer(c);
            if (!z) {
              integral = false;
              break;
            }
            coeffs.emplace_back(*z);
          }
          if (integral) {
            const QPoly cand(coeffs);
            if (divmod(f, cand).remainder.is_zero())
              throw Error("ReduciblePolynomial", "polynomial has a factor of degree " + std::to_string(k),
                          {{"factor", cand.str()}});
          }
          int p = k - 1;
          while (p >= 0 && idx[p] == n - k + p) --p;
          if (p < 0) break;
          ++idx[p];
          for (int q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
        }
      }
    }
  }
  for (long p = 2; p < 2000 && n >= 3 && !F.primitive_prime_; ++p)
    if (is_prime(p) && factor_degrees_mod_p(f, p) == std::vector<int>{1, n - 1}) F.primitive_prime_ = p;
  F.find_conjugation();
  return F;
}

void PolynomialField::isolate_roots() {
  const int n = f_.degree();
  // Durand-Kerner in long double for starting values.
  using LC = std::complex<long double>;
  std::vector<long double> a;
  for (int i = 0; i <= n; ++i) a.push_back(f_.coeff(i).get_d());
  long double bound = 1;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(a[i]));
  std::vector<LC> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(0.5L * bound, 2.0L * 3.14159265358979323846L * k / n + 0.4L);
  auto eval = [&](LC x) {
    LC acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + a[i];
    return acc;
  };
  for (int iter = 0; iter < 5000; ++iter) {
    long double change = 0;
    for (int i = 0; i < n; ++i) {
      LC denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= z[i] - z[j];
      const LC step = eval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (change < 1e-18L) break;
  }

  const QPoly df = f_.derivative();
  for (mpfr_prec_t prec = 256; prec <= 8192; prec *= 2) {
    prec_ = prec;
    re_mid_.clear();
    im_mid_.clear();
    for (int i = 0; i < n; ++i) {
      MpReal re(prec), im(prec);
      mpfr_set_ld(re.get(), z[i].real(), MPFR_RNDN);
      mpfr_set_ld(im.get(), z[i].imag(), MPFR_RNDN);
      for (int it = 0; it < 12 + static_cast<int>(prec / 64); ++it) {
        const CertifiedComplex x = point(re, im, prec);
        const CertifiedComplex d = horner(df, x, prec);
        if (d.contains_zero()) break;
        const CertifiedComplex next = x - horner(f_, x, prec) / d;
        re = next.re();
        im = next.im();
      }
      re_mid_.push_back(re);
      im_mid_.push_back(im);
    }
    // Inclusion disks D(z_i, n |W_i|), W_i = f(z_i) / prod_{j != i} (z_i - z_j).
    std::vector<CertifiedComplex> balls;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const CertifiedComplex zi = point(re_mid_[i], im_mid_[i], prec);
      CertifiedComplex denom = CertifiedComplex::from_rational(1, prec);
      for (int j = 0; j < n; ++j)
        if (j != i) denom = denom * (zi - point(re_mid_[j], im_mid_[j], prec));
      if (denom.contains_zero()) {
        ok = false;
        break;
      }
      const CertifiedComplex w = horner(f_, zi, prec) / denom;
      balls.push_back(CertifiedComplex::ball(re_mid_[i], im_mid_[i], n * w.abs_upper(), prec));
    }
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) ok = !balls[i].overlaps(balls[j]);
    if (!ok) continue;
    // order by real part (on a 1e-9 grid, so conjugate pairs tie) then imaginary part
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const double rx = std::round(re_mid_[x].to_double() * 1e9), ry = std::round(re_mid_[y].to_double() * 1e9);
      if (rx != ry) return rx < ry;
      return im_mid_[x].to_double() < im_mid_[y].to_double();
    });
    roots_.clear();
    std::vector<MpReal> re2, im2;
    for (int i : order) {
      roots_.push_back(balls[i]);
      re2.push_back(re_mid_[i]);
      im2.push_back(im_mid_[i]);
    }
    re_mid_ = std::move(re2);
    im_mid_ = std::move(im2);
    conj_.assign(n, -1);
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n; ++j)
        if (roots_[i].conj().overlaps(roots_[j])) {
          if (conj_[i] != -1) ok = false;
          conj_[i] = j;
        }
      if (conj_[i] == -1) ok = false;
    }
    int real_count = 0;
    for (int i = 0; i < n; ++i) real_count += conj_[i] == i;
    if (ok && real_count == real_roots_) return;
  }
  throw std::logic_error("root isolation did not converge");
}

CertifiedComplex PolynomialField::embed(const std::vector<Rational>& x, int j, mpfr_prec_t prec) const {
  const mpfr_prec_t p = std::max(prec, prec_);
  CertifiedComplex acc(p);
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i)
    acc = acc * roots_[j] + CertifiedComplex::from_rational(x[i], p);
  return acc;
}

std::vector<Rational> PolynomialField::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  const QPoly prod = QPoly(a) * QPoly(b);
  const QPoly r = prod % f_;
  std::vector<Rational> out(degree(), Rational(0));
  for (int i = 0; i <= r.degree(); ++i) out[i] = r.coeff(i);
  return out;
}

void PolynomialField::find_conjugation() {
  const int n = degree();
  if (n == 1) {
    iota_ = std::vector<Rational>{Rational(1)};
    return;
  }
  // Denominators of O_F in the power basis divide disc(f) = +-N(f'(alpha)).
  RatMatrix mult(n, n, Rational(0));
  std::vector<Rational> dfc(n, Rational(0));
  const QPoly df = f_.derivative();
  for (int i = 0; i <= df.degree(); ++i) dfc[i] = df.coeff(i);
  for (int c = 0; c < n; ++c) {
    std::vector<Rational> basis(n, Rational(0));
    basis[c] = 1;
    const auto col = multiply(dfc, basis);
    for (int r = 0; r < n; ++r) mult(r, c) = col[r];
  }
  Rational disc = exact_determinant(mult);
  if (sgn(disc) < 0) disc = -disc;

  // Lagrange interpolant q(alpha_j) = conj(alpha_j), scaled by disc.
  const mpfr_prec_t prec = prec_;
  BallPoly q(n, CertifiedComplex(prec));
  for (int j = 0; j < n; ++j) {
    BallPoly lj{CertifiedComplex::from_rational(1, prec)};
    CertifiedComplex denom = CertifiedComplex::from_rational(1, prec);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      lj = times_linear(lj, roots_[k], prec);
      denom = denom * (roots_[j] - roots_[k]);
    }
    const CertifiedComplex scale = roots_[conj_[j]] * denom.inverse() * CertifiedComplex::from_rational(disc, prec);
    for (int i = 0; i < n; ++i) q[i] = q[i] + lj[i] * scale;
  }
  std::vector<Rational> coeffs;
  for (const auto& c : q) {
    std::optional<Integer> z;
    try {
      z = ball_integer(c);
    } catch (const std::range_error&) {
      throw std::logic_error("conjugation interpolant not resolved at this precision");
    }
    if (!z) return;  // provably not rational with denominator disc: no such automorphism
    coeffs.push_back(ratio(*z, disc.get_num()));
  }
  // f(q(x)) = 0 in F, exactly.
  std::vector<Rational> acc(n, Rational(0));
  for (int i = f_.degree(); i >= 0; --i) {
    acc = multiply(acc, coeffs);
    acc[0] += f_.coeff(i);
  }
  for (const auto& c : acc)
    if (sgn(c) != 0) return;
  for (int j = 0; j < n; ++j) {
    const CertifiedComplex img = embed(coeffs, j);
    if (!img.overlaps(roots_[conj_[j]])) return;
    for (int k = 0; k < n; ++k)
      if (k != conj_[j] && img.overlaps(roots_[k])) throw std::logic_error("conjugation image not isolated");
  }
  iota_ = std::move(coeffs);
}

}  // namespace rigidtori
