#include "rigidtori/lattice.hpp"

#include <stdexcept>

namespace rigidtori {

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  const std::size_t k = m.rows();
  // Rows of `work` are [m^T row | unimodular row]; row operations keep the
  // right block unimodular, rows whose left block vanishes span the kernel.
  IntMatrix work(n, k + n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) work(i, j) = m(j, i);
    work(i, k + i) = 1;
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < k && pivot_row < n; ++col) {
    // Euclid on column `col` across rows pivot_row..n-1.
    while (true) {
      std::size_t best = n;
      for (std::size_t r = pivot_row; r < n; ++r) {
        if (sgn(work(r, col)) == 0) continue;
        if (best == n || abs(work(r, col)) < abs(work(best, col))) best = r;
      }
      if (best == n) break;
      work.swap_rows(best, pivot_row);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < n; ++r) {
        if (sgn(work(r, col)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), work(r, col).get_mpz_t(), work(pivot_row, col).get_mpz_t());
        for (std::size_t c = 0; c < k + n; ++c)
          if (sgn(work(pivot_row, c)) != 0) work(r, c) -= q * work(pivot_row, c);
        if (sgn(work(r, col)) != 0) done = false;
      }
      if (done) {
        ++pivot_row;
        break;
      }
    }
  }
  const std::size_t nullity = n - pivot_row;
  IntMatrix out(n, nullity, Integer(0));
  for (std::size_t j = 0; j < nullity; ++j)
    for (std::size_t i = 0; i < n; ++i) out(i, j) = work(pivot_row + j, k + i);
  // Light size reduction so repeated kernels do not blow up entries.
  for (std::size_t j = 0; j < nullity; ++j) {
    for (std::size_t other = 0; other < nullity; ++other) {
      if (other == j) continue;
      std::size_t lead = n;
      for (std::size_t i = 0; i < n; ++i)
        if (sgn(out(i, other)) != 0) {
          lead = i;
          break;
        }
      if (lead == n) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), out(lead, j).get_mpz_t(), out(lead, other).get_mpz_t());
      Integer twice = 2 * (out(lead, j) - q * out(lead, other));
      if (abs(twice) > abs(out(lead, other))) q += 1;
      if (sgn(q) == 0) continue;
      Integer before = 0, after = 0;
      for (std::size_t i = 0; i < n; ++i) {
        before += out(i, j) * out(i, j);
        Integer v = out(i, j) - q * out(i, other);
        after += v * v;
      }
      if (after < before)
        for (std::size_t i = 0; i < n; ++i) out(i, j) -= q * out(i, other);
    }
  }
  return out;
}

IntMatrix saturate(const IntMatrix& generators) {
  const std::size_t n = generators.rows();
  if (generators.cols() == 0) return IntMatrix(n, 0, Integer(0));
  IntMatrix orth = integer_kernel(generators.transpose());
  if (orth.cols() == 0) return integer_kernel(IntMatrix(1, n, Integer(0)));
  return integer_kernel(orth.transpose());
}

std::vector<Integer> primitive_vector(const std::vector<Rational>& v) {
  const Integer den = common_denominator(v);
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Rational scaled = x * den;
    out.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g == 0) throw std::invalid_argument("primitive_vector: zero vector");
  for (auto& x : out) x /= g;
  return out;
}

RatMatrix primitive_matrix(const RatMatrix& m) {
  if (is_zero_matrix(m)) return m;
  std::vector<Integer> flat = primitive_vector(m.data());
  RatMatrix out(m.rows(), m.cols(), Rational(0));
  for (std::size_t i = 0; i < flat.size(); ++i) out(i / m.cols(), i % m.cols()) = Rational(flat[i]);
  return out;
}

IntMatrix to_integer(const RatMatrix& m) {
  return m.map([](const Rational& q) {
    if (q.get_den() != 1) throw std::invalid_argument("to_integer: non-integral entry");
    return Integer(q.get_num());
  });
}

RatMatrix to_rational(const IntMatrix& m) {
  return m.map([](const Integer& z) { return Rational(z); });
}

}  // namespace rigidtori
