#include "rigidtori/polarize.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>

#include "rigidtori/errors.hpp"
#include "rigidtori/lattice.hpp"
#include "rigidtori/matrix.hpp"

namespace rigidtori {

namespace {

void check_cm_type(const std::vector<int>& S, const std::vector<int>& embeddings, const std::function<int(int)>& conj) {
  std::set<int> s(S.begin(), S.end());
  if (s.size() != S.size()) throw InputError("CM type lists an embedding twice");
  for (int e : S)
    if (std::find(embeddings.begin(), embeddings.end(), e) == embeddings.end())
      throw InputError("CM type names " + std::to_string(e) + ", which is not an embedding");
  for (int e : embeddings) {
    const int c = conj(e);
    if (c == e) continue;
    if (s.count(e) + s.count(c) != 1)
      throw InputError("CM type must contain exactly one of the embeddings " + std::to_string(e) + " and " +
                       std::to_string(c));
  }
}

/// Solves M y = 1 in floating point, then rationalizes y with growing
/// denominator bounds until `accept` certifies the candidate.
template <class Accept>
std::vector<Rational> rationalized_interior_point(const Eigen::MatrixXd& M, Accept accept) {
  const Eigen::VectorXd y = M.colPivHouseholderQr().solve(Eigen::VectorXd::Ones(M.rows()));
  const double scale = y.cwiseAbs().maxCoeff();
  for (long den = 16; den <= (1L << 40); den *= 2) {
    std::vector<Rational> q;
    for (Eigen::Index l = 0; l < y.size(); ++l) q.push_back(best_rational(y(l) / scale, Integer(den)));
    if (accept(q)) return q;
  }
  throw std::logic_error("no certified interior point found");
}

/// Positive multiple with integral, coprime coordinates.
std::vector<Rational> primitive_coordinates(const std::vector<Rational>& v) {
  const auto p = primitive_vector(v);
  return std::vector<Rational>(p.begin(), p.end());
}

nlohmann::json cyc_vector_json(const std::vector<CyclotomicNumber>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

void check_alternating(const RatMatrix& E, int rank) {
  if (static_cast<int>(E.rows()) != rank || static_cast<int>(E.cols()) != rank)
    throw InputError("form must be " + std::to_string(rank) + "x" + std::to_string(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (E(i, j) != -E(j, i)) throw InputError("form is not alternating");
}

bool rosati_holds(const RatMatrix& E, const IntegralRepresentation& rho, const CharacterTable& table, int* bad) {
  const auto& cls = table.classes();
  std::vector<RatMatrix> sums;
  for (int c = 0; c < cls.count; ++c) {
    RatMatrix s(rho.rank(), rho.rank(), Rational(0));
    for (int g : cls.members[c]) s += rho.rational(g);
    sums.push_back(std::move(s));
  }
  for (int c = 0; c < cls.count; ++c)
    if (!(sums[c].transpose() * E == E * sums[cls.inverse_class[c]])) {
      *bad = c;
      return false;
    }
  return true;
}

bool g_invariant(const RatMatrix& E, const IntegralRepresentation& rho) {
  for (int g = 0; g < rho.group().order(); ++g)
    if (!(rho.rational(g).transpose() * E * rho.rational(g) == E)) return false;
  return true;
}

/// Exact LDL^T of a symmetric matrix with entries in an ordered field.
/// Returns -1 if every pivot is positive, otherwise the failing index, with
/// `witness` set to x such that x^T S x equals that pivot.
template <class T, class Field, class Sign>
int ldl_positive(Matrix<T> S, const Field& field, Sign sign, std::vector<T>* witness) {
  const std::size_t n = S.rows();
  Matrix<T> A = identity(n, field);  // current S = A S0 A^T
  for (std::size_t k = 0; k < n; ++k) {
    if (sign(S(k, k)) <= 0) {
      if (witness) *witness = A.row(k);
      return static_cast<int>(k);
    }
    const T inv = field.one() / S(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(S(i, k))) continue;
      const T f = S(i, k) * inv;
      for (std::size_t j = 0; j < n; ++j) S(i, j) -= f * S(k, j);
      for (std::size_t j = 0; j < n; ++j) S(j, i) -= f * S(j, k);
      for (std::size_t j = 0; j < n; ++j) A(i, j) -= f * A(k, j);
    }
  }
  return -1;
}

std::vector<int> shuffled(std::size_t n, std::mt19937_64& gen) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[gen() % i]);
  return v;
}

}  // namespace

std::vector<CyclotomicNumber> imaginary_subspace(const SubfieldSpec& F) {
  if (F.kind() == FieldKind::TotallyReal)
    throw Error("RealEmbeddingPresent", F.describe() + " has a real embedding",
                {{"field", F.describe()}, {"embedding", F.embeddings().front()}});
  const int d = F.degree();
  RatMatrix C(d, d, Rational(0));
  for (int l = 0; l < d; ++l) {
    const auto col = F.coordinates(F.basis()[l].conjugate());
    for (int k = 0; k < d; ++k) C(k, l) = col[k];
  }
  for (int k = 0; k < d; ++k) C(k, k) += 1;
  const RatMatrix ker = nullspace(C, Rationals{});
  std::vector<CyclotomicNumber> out;
  for (std::size_t c = 0; c < ker.cols(); ++c) out.push_back(F.element(primitive_coordinates(ker.column(c))));
  return out;
}

ImaginaryElement find_zeta(const SubfieldSpec& F, const std::vector<int>& S) {
  if (F.kind() == FieldKind::TotallyReal)
    throw Error("NotCMField", F.describe() + " is totally real: every embedding is real, so Im sigma(zeta) = 0",
                {{"field", F.describe()}, {"pair", {F.embeddings().front(), F.embeddings().front()}}});
  check_cm_type(S, F.embeddings(), [&](int e) { return F.conjugate_embedding(e); });
  const auto c = imaginary_subspace(F);
  Eigen::MatrixXd M(S.size(), c.size());
  for (std::size_t j = 0; j < S.size(); ++j)
    for (std::size_t l = 0; l < c.size(); ++l) M(j, l) = c[l].embed_double(S[j]).imag();
  auto combine = [&](const std::vector<Rational>& q) {
    CyclotomicNumber z = F.ambient()->zero();
    for (std::size_t l = 0; l < c.size(); ++l) z += c[l] * q[l];
    return z;
  };
  auto q = rationalized_interior_point(M, [&](const std::vector<Rational>& y) {
    const CyclotomicNumber z = combine(y);
    if (z.is_zero()) return false;
    for (int a : S)
      if (certified_sign_imag(z, a) <= 0) return false;
    return true;
  });
  q = primitive_coordinates(q);
  ImaginaryElement out{F, combine(q), {}};
  for (int e : F.embeddings()) out.signs[e] = certified_sign_imag(out.zeta, e);
  return out;
}

RatMatrix trace_form(const SubfieldSpec& F, const CyclotomicNumber& zeta, const std::vector<CyclotomicNumber>& basis) {
  const std::size_t n = basis.size();
  RatMatrix E(n, n, Rational(0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) E(k, l) = F.trace(zeta * basis[k] * basis[l].conjugate());
  return E;
}

PolarizationForm assemble_polarization(const IntegralRepresentation& rho, const CharacterTable& table,
                                       const GaloisOrbitDecomposition& orbits, const SymbolicHodgeSpec& spec,
                                       const PolarizationOptions& options) {
  const int N = rho.rank();
  if (N % 2) throw InputError("lattice rank must be even");
  validate_hodge_symmetry(spec, N / 2);
  if (spec.fields.size() != orbits.orbits.size())
    throw InputError("symbolic Hodge data does not list one field per Galois orbit");
  const RigidityReport rigidity = rigidity_by_centre(spec);
  if (!rigidity.is_rigid) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& v : rigidity.violations)
      w.push_back({{"field", v.field_name}, {"embedding", v.embedding}, {"conjugate", v.conjugate},
                   {"tau", v.tau}, {"tau_conjugate", v.tau_conjugate}});
    throw Error("NotRigid", "Hodge type has tau(sigma) tau(sigma-bar) > 0", {{"violations", w}});
  }

  const auto pieces = isotypic_split(rho, orbits);
  std::mt19937_64 gen(options.basis_seed.value_or(0));
  std::vector<std::vector<Rational>> columns;
  std::vector<RatMatrix> blocks;
  PolarizationForm form;
  form.rank = N;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const auto& piece = pieces[j];
    const SubfieldSpec& F = orbits.orbits[j].field;
    const int n_j = spec.multiplicities[j];
    if (static_cast<int>(piece.basis.cols()) != n_j * F.degree())
      throw InputError("symbolic Hodge data does not match the representation on " + F.describe());
    if (n_j == 0) continue;
    if (F.kind() != FieldKind::CM)
      throw Error("NonCMFieldActive", F.describe() + " is active in a rigid type but not CM", {{"orbit", j}});
    std::vector<int> S;
    for (auto [e, t] : spec.tau[j])
      if (t == n_j) S.push_back(e);
    const ImaginaryElement zeta = find_zeta(F, S);
    const auto T = centre_action(rho, table, orbits, static_cast<int>(j));
    std::vector<int> order;
    if (options.basis_seed) order = shuffled(piece.basis.cols(), gen);
    const auto vs = f_module_basis(piece, T, order);
    const RatMatrix block = trace_form(F, zeta.zeta, F.basis());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      PolarizationSummand s;
      s.orbit = static_cast<int>(j);
      s.copy = static_cast<int>(i);
      s.field = F.describe();
      s.zeta = F.coordinates(zeta.zeta);
      s.signs = zeta.signs;
      const RatMatrix v = from_columns(std::vector<std::vector<Rational>>{vs[i]}, N, Rational(0));
      for (const auto& t : T) {
        s.columns.push_back(static_cast<int>(columns.size()));
        columns.push_back((t * v).column(0));
      }
      blocks.push_back(block);
      form.summands.push_back(std::move(s));
    }
  }
  const RatMatrix B = from_columns(columns, N, Rational(0));
  RatMatrix Ey(N, N, Rational(0));
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) Ey(at + r, at + c) = b(r, c);
    at += b.rows();
  }
  const auto Binv = inverse(B, Rationals{});
  if (!Binv) throw std::logic_error("assemble_polarization: F-module bases do not span the lattice");
  RatMatrix E = Binv->transpose() * Ey * *Binv;
  if (options.g_invariant) {
    RatMatrix avg(N, N, Rational(0));
    for (int g = 0; g < rho.group().order(); ++g) avg += rho.rational(g).transpose() * E * rho.rational(g);
    E = avg;
  }
  E = primitive_matrix(E);
  form.E = to_integer(E);
  form.certificate = verify_polarization(E, rho, table, orbits, spec);
  return form;
}

PolarizationForm assemble_polarization(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                       const CharacterTable& table, const GaloisOrbitDecomposition& orbits,
                                       const PolarizationOptions& options) {
  const HodgeCharacter chi10 = hodge_character_from_numeric(rho, J, table);
  const SymbolicHodgeSpec spec = symbolic_spec_from_character(chi10, table, orbits);
  PolarizationForm form = assemble_polarization(rho, table, orbits, spec, options);
  const PolarizationCertificate numeric = verify_polarization(to_rational(form.E), rho, J, table, options);
  form.certificate.method = "exact+numeric";
  form.certificate.relation_one_residual = numeric.relation_one_residual;
  form.certificate.min_eigenvalue_lower_bound = numeric.min_eigenvalue_lower_bound;
  form.certificate.relation_two_statement += "; " + numeric.relation_two_statement;
  return form;
}

PolarizationCertificate verify_polarization(const RatMatrix& E, const IntegralRepresentation& rho,
                                            const CharacterTable& table, const GaloisOrbitDecomposition& orbits,
                                            const SymbolicHodgeSpec& spec) {
  const int N = rho.rank();
  check_alternating(E, N);
  validate_hodge_symmetry(spec, N / 2);
  if (!rigidity_by_centre(spec).is_rigid)
    throw Error("NotRigid", "exact verification needs a rigid Hodge type (J is then determined by it)");

  const FieldPtr& f = table.field();
  const int M = std::lcm(f->conductor(), 4);
  const FieldPtr K = CyclotomicField::make(M);
  // P projects V (x) Q(zeta_M) onto V^{1,0}: the sum of the isotypic parts it contains.
  CycMatrix P(N, N, K->zero());
  for (std::size_t j = 0; j < orbits.orbits.size(); ++j) {
    const auto& o = orbits.orbits[j];
    for (std::size_t i = 0; i < o.members.size(); ++i) {
      if (spec.tau[j].at(o.residues[i]) == 0) continue;
      const CycMatrix p = rho.apply(central_idempotent(table, o.members[i]), f);
      for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c)
          if (!p(r, c).is_zero()) P(r, c) += p(r, c).lift(K);
    }
  }
  const CycMatrix Ek = to_cyclotomic(E, K);
  const CycMatrix rel1 = P.transpose() * Ek * P;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      if (!rel1(r, c).is_zero())
        throw Error("RelationIFails", "E(V10, V10) != 0",
                    {{"u", cyc_vector_json(P.column(r))}, {"v", cyc_vector_json(P.column(c))},
                     {"E(u,v)", rel1(r, c).str()}});

  // J = i (P - conj(P)); S = E J must be positive definite.
  const CyclotomicNumber i = K->zeta(M / 4);
  CycMatrix J(N, N, K->zero());
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) J(r, c) = i * (P(r, c) - P(r, c).conjugate());
  const CycMatrix S = Ek * J;
  if (!(S == S.transpose())) throw std::logic_error("E J is not symmetric although relation I holds");
  std::vector<CyclotomicNumber> witness;
  const int bad = ldl_positive(S, *K, [](const CyclotomicNumber& x) { return certified_sign_real(x, 1); }, &witness);
  if (bad >= 0) {
    const CycMatrix w = from_columns(std::vector<std::vector<CyclotomicNumber>>{witness}, N, K->zero());
    const CyclotomicNumber value = (w.transpose() * S * w)(0, 0);
    throw Error("NotPositiveDefinite", "E(x, Jx) <= 0 for the witness x",
                {{"x", cyc_vector_json(witness)}, {"E(x,Jx)", value.str()}});
  }

  int bad_class = -1;
  if (!rosati_holds(E, rho, table, &bad_class))
    throw Error("RosatiFails", "E(x v, w) != E(v, conj(x) w) for a class sum x", {{"class", bad_class}});

  PolarizationCertificate cert;
  cert.method = "exact";
  cert.relation_one = true;
  cert.relation_two = true;
  cert.relation_two_statement = "E(x, Jy) = L D L^T with all " + std::to_string(N) + " pivots certified positive";
  cert.rosati = true;
  cert.g_invariant = g_invariant(E, rho);
  return cert;
}

PolarizationCertificate verify_polarization(const RatMatrix& E, const IntegralRepresentation& rho,
                                            const Eigen::MatrixXd& J, const CharacterTable& table,
                                            const PolarizationOptions& options) {
  const int N = rho.rank();
  check_alternating(E, N);
  if (J.rows() != N || J.cols() != N) throw InputError("complex structure has the wrong size");
  Rational emax = 0;
  for (const auto& x : E.data()) emax = std::max(emax, Rational(abs(x)));
  if (sgn(emax) == 0) throw Error("NotPositiveDefinite", "E is zero", {{"x", std::vector<int>(N, 0)}});
  Eigen::MatrixXd Ed(N, N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) Ed(r, c) = Rational(E(r, c) / emax).get_d();

  PolarizationCertificate cert;
  cert.method = "numeric";
  cert.relation_one_residual = (J.transpose() * Ed * J - Ed).norm();
  if (!(cert.relation_one_residual <= options.relation_one_tolerance))
    throw Error("RelationIFails", "|J^T E J - E| exceeds the tolerance",
                {{"residual", cert.relation_one_residual}, {"tolerance", options.relation_one_tolerance}});
  cert.relation_one = true;

  // S = sym(E J) / max|E| exactly from the double entries of J.
  RatMatrix Jq(N, N, Rational(0));
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) Jq(r, c) = Rational(J(r, c));
  RatMatrix S = E * Jq;
  S = (S + S.transpose()) * ratio(1, 2);
  S *= Rational(1) / emax;
  Eigen::MatrixXd Sd(N, N);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) Sd(r, c) = S(r, c).get_d();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Sd);
  const double lambda = es.eigenvalues()(0);
  auto certified = [&](double s) {
    RatMatrix shifted = S;
    const Rational sq(s);
    for (int k = 0; k < N; ++k) shifted(k, k) -= sq;
    return ldl_positive(shifted, Rationals{}, [](const Rational& x) { return sgn(x); },
                        static_cast<std::vector<Rational>*>(nullptr)) < 0;
  };
  double bound = -1;
  if (lambda * (1 - 1e-6) >= options.min_eigenvalue && certified(lambda * (1 - 1e-6)))
    bound = lambda * (1 - 1e-6);
  else if (certified(options.min_eigenvalue))
    bound = options.min_eigenvalue;
  if (bound < 0) {
    std::vector<double> x(es.eigenvectors().col(0).data(), es.eigenvectors().col(0).data() + N);
    throw Error("NotPositiveDefinite", "minimum eigenvalue of E(x, Jy) is not certified above the threshold",
                {{"x", x}, {"eigenvalue", lambda}, {"threshold", options.min_eigenvalue}});
  }
  cert.relation_two = true;
  cert.min_eigenvalue_lower_bound = bound;
  cert.relation_two_statement = "lambda_min(E(x, Jy)) / max|E| > " + std::to_string(bound) + " (exact LDL^T)";
  int bad_class = -1;
  if (!rosati_holds(E, rho, table, &bad_class))
    throw Error("RosatiFails", "E(x v, w) != E(v, conj(x) w) for a class sum x", {{"class", bad_class}});
  cert.rosati = true;
  cert.g_invariant = g_invariant(E, rho);
  return cert;
}

std::vector<int> upper_half_plane_type(const PolynomialField& F) {
  std::vector<int> S;
  for (int j = 0; j < F.degree(); ++j)
    if (F.roots()[j].sign_imag() > 0) S.push_back(j);
  return S;
}

ExistenceCertificate polarization_exists(const QPoly& f, const std::vector<int>& S) {
  const PolynomialField F = PolynomialField::make(f);
  const int n = F.degree();
  if (F.real_root_count() > 0)
    throw Error("NotTotallyImaginary", f.str() + " has " + std::to_string(F.real_root_count()) + " real roots",
                {{"real_roots", F.real_root_count()}});
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  check_cm_type(S, all, [&](int j) { return F.conjugate(j); });

  ExistenceCertificate cert;
  cert.field = "Q[x]/(" + f.str() + ")";
  const auto& iota = F.complex_conjugation();
  if (!iota) {
    if (!F.primitivity_prime())
      throw Error("Undecided", "field is not CM but has proper subfields; no certificate implemented",
                  {{"polynomial", f.str()}});
    cert.exists = false;
    cert.obstruction = {
        {"reason", "not CM and no proper subfields"},
        {"no_conjugation_automorphism",
         "the interpolant q with q(alpha_j) = conj(alpha_j) is not an automorphism (exact check)"},
        {"primitivity_prime", *F.primitivity_prime()},
        {"primitivity", "f mod p factors as degree 1 + (n-1): the Galois group is 2-transitive, so F has no "
                        "subfields besides Q and F"},
        {"imaginary_space_dimension", 0},
        {"identity", "x purely imaginary under every embedding forces x^2 totally negative, Q(x^2) in {Q, F}: "
                     "F = Q(x^2) is impossible (F has no real embedding), x^2 in Q gives [F:Q] = 2; hence x = 0"},
        {"pair", {S.front(), F.conjugate(S.front())}},
        {"signs", "Im sigma_j(0) = 0 fails Im sigma_j(zeta) > 0"}};
    return cert;
  }
  // W = ker(iota + 1) in the power basis.
  RatMatrix C(n, n, Rational(0));
  std::vector<Rational> power(n, Rational(0));
  power[0] = 1;
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) C(r, c) = power[r];
    power = F.multiply(power, *iota);
  }
  for (int k = 0; k < n; ++k) C(k, k) += 1;
  const RatMatrix W = nullspace(C, Rationals{});
  std::vector<std::vector<Rational>> w;
  for (std::size_t c = 0; c < W.cols(); ++c) w.push_back(primitive_coordinates(W.column(c)));
  Eigen::MatrixXd M(S.size(), w.size());
  for (std::size_t j = 0; j < S.size(); ++j)
    for (std::size_t l = 0; l < w.size(); ++l) M(j, l) = F.embed(w[l], S[j]).midpoint().imag();
  auto combine = [&](const std::vector<Rational>& q) {
    std::vector<Rational> z(n, Rational(0));
    for (std::size_t l = 0; l < w.size(); ++l)
      for (int k = 0; k < n; ++k) z[k] += q[l] * w[l][k];
    return z;
  };
  auto q = rationalized_interior_point(M, [&](const std::vector<Rational>& y) {
    const auto z = combine(y);
    for (int j : S)
      if (F.embed(z, j).sign_imag() <= 0) return false;
    return true;
  });
  cert.exists = true;
  cert.witness = primitive_coordinates(combine(q));
  for (int j = 0; j < n; ++j) cert.signs[j] = F.embed(cert.witness, j).sign_imag();
  return cert;
}

ExistenceCertificate polarization_exists(const SubfieldSpec& F, const std::vector<int>& S) {
  ExistenceCertificate cert;
  cert.field = F.describe();
  if (F.kind() == FieldKind::TotallyReal) {
    const int e = F.embeddings().front();
    cert.exists = false;
    cert.obstruction = {{"reason", "totally real"},
                        {"pair", {e, e}},
                        {"identity", "sigma(zeta) = conj(sigma(zeta)) for every zeta, so Im sigma(zeta) = 0"},
                        {"imaginary_space_dimension", 0}};
    return cert;
  }
  const ImaginaryElement z = find_zeta(F, S);
  cert.exists = true;
  cert.witness = F.coordinates(z.zeta);
  cert.signs = z.signs;
  return cert;
}

QPoly defining_polynomial(const SubfieldSpec& F) {
  const int d = F.degree();
  const auto& b = F.basis();
  for (int attempt = 0; attempt < 64; ++attempt) {
    CyclotomicNumber x = F.ambient()->zero();
    if (attempt < d) {
      x = b[attempt];
    } else {
      for (int k = 0; k < d; ++k) x += b[k] * Rational((attempt - d + 1) * k + 1);
    }
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
    for (int l = 0; l < d; ++l) {
      const auto col = F.coordinates(x * b[l]);
      for (int k = 0; k < d; ++k) m[k][l] = col[k];
    }
    const QPoly p = characteristic_polynomial(m);
    if (d > 1 && gcd(p, p.derivative()).degree() > 0) continue;
    return p;
  }
  throw std::logic_error("no generator found for " + F.describe());
}

}  // namespace rigidtori
