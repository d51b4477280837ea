#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidtori/interval.hpp"
#include "rigidtori/polynomial.hpp"

namespace rigidtori {

/// Factor degrees of a squarefree integer polynomial modulo a prime
/// (distinct-degree factorization), ascending. Empty if p divides the leading
/// coefficient or f is not squarefree mod p.
std::vector<int> factor_degrees_mod_p(const QPoly& f, long p);

/// Q[x]/(f) for a monic irreducible integer polynomial of degree <= 16 with
/// roots enclosed in pairwise disjoint certified disks.
class PolynomialField {
 public:
  /// Throws InputError for non-monic / non-integral input or degree outside
  /// [1, 16], Error "ReduciblePolynomial" with a factor as witness.
  static PolynomialField make(const QPoly& f);

  const QPoly& polynomial() const { return f_; }
  int degree() const { return f_.degree(); }
  /// Number of real roots (Sturm).
  int real_root_count() const { return real_roots_; }
  /// Root enclosures, ordered by real part then imaginary part. Embedding j
  /// sends x to roots()[j].
  const std::vector<CertifiedComplex>& roots() const { return roots_; }
  /// Index of the complex-conjugate root.
  int conjugate(int j) const { return conj_[j]; }
  /// How irreducibility was established: "linear", "mod-p sieve" or "root recombination".
  const std::string& irreducibility_proof() const { return proof_; }

  /// sigma_j(x) for x given by power-basis coordinates, at the root
  /// enclosure's precision (refined to at least `prec`).
  CertifiedComplex embed(const std::vector<Rational>& x, int j, mpfr_prec_t prec = 128) const;
  /// Exact product in the power basis.
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;

  /// An automorphism iota with sigma_j(iota(x)) = conj(sigma_j(x)) for every j,
  /// as the power-basis image of x, or nullopt if there is none (F is then
  /// not CM). Decided exactly: the unique interpolant of alpha_j -> conj(alpha_j)
  /// is either rational with f | f(q) or provably irrational.
  const std::optional<std::vector<Rational>>& complex_conjugation() const { return iota_; }
  /// A prime p with f = (linear)(irreducible of degree n-1) mod p, if one below
  /// 2000 exists: the Galois group then contains an (n-1)-cycle, is
  /// 2-transitive, and F has no subfields besides Q and F.
  std::optional<long> primitivity_prime() const { return primitive_prime_; }

 private:
  PolynomialField() = default;
  void isolate_roots();
  void find_conjugation();
  QPoly f_;
  int real_roots_ = 0;
  std::vector<CertifiedComplex> roots_;
  std::vector<int> conj_;
  std::string proof_;
  std::optional<std::vector<Rational>> iota_;
  std::optional<long> primitive_prime_;
  mpfr_prec_t prec_ = 128;
  std::vector<MpReal> re_mid_, im_mid_;
};

}  // namespace rigidtori
