#include "rigidtori/hodge.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "rigidtori/errors.hpp"
#include "rigidtori/matrix.hpp"

namespace rigidtori {

namespace {

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

long exact_nonneg_integer(const CyclotomicNumber& x, const std::string& what) {
  if (!x.is_rational() || x.rational_value().get_den() != 1 || sgn(x.rational_value()) < 0)
    throw Error("InconsistentCharacter", what + " is " + x.str() + ", not a nonnegative integer",
                {{"value", x.str()}});
  return x.rational_value().get_num().get_si();
}

std::vector<CyclotomicNumber> conjugate_values(const std::vector<CyclotomicNumber>& v) {
  std::vector<CyclotomicNumber> out;
  for (const auto& x : v) out.push_back(x.conjugate());
  return out;
}

std::vector<EmbeddingRow> embedding_rows(const SymbolicHodgeSpec& spec, std::vector<EmbeddingRow>* violations) {
  std::vector<EmbeddingRow> rows;
  for (std::size_t j = 0; j < spec.fields.size(); ++j) {
    if (spec.multiplicities[j] == 0) continue;
    const auto& f = spec.fields[j];
    for (int e : f.embeddings()) {
      EmbeddingRow r;
      r.field = static_cast<int>(j);
      r.field_name = f.describe();
      r.embedding = e;
      r.conjugate = f.conjugate_embedding(e);
      r.tau = spec.tau[j].at(e);
      r.tau_conjugate = spec.tau[j].at(r.conjugate);
      r.product = static_cast<long>(r.tau) * r.tau_conjugate;
      if (violations && r.product > 0 && r.embedding <= r.conjugate) violations->push_back(r);
      rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace

void validate_complex_structure(const IntegralRepresentation& rho, const Eigen::MatrixXd& J, double tolerance) {
  const int n = rho.rank();
  if (J.rows() != n || J.cols() != n)
    throw InputError("complex structure must be " + std::to_string(n) + "x" + std::to_string(n));
  if (n % 2) throw InputError("lattice rank must be even");
  const double sq = (J * J + Eigen::MatrixXd::Identity(n, n)).norm();
  if (!(sq <= tolerance))
    throw Error("InvalidComplexStructure", "|J^2 + I| = " + std::to_string(sq), {{"J2_plus_I", sq}});
  for (int g = 0; g < rho.group().order(); ++g) {
    const Eigen::MatrixXd r = to_double(rho.rational(g));
    const double c = (J * r - r * J).norm();
    if (!(c <= tolerance))
      throw Error("InvalidComplexStructure", "J does not commute with rho(" + std::to_string(g) + ")",
                  {{"element", g}, {"commutator", c}});
  }
}

HodgeCharacter hodge_character_from_numeric(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                            const CharacterTable& table, const NumericTolerances& tol) {
  validate_complex_structure(rho, J, tol.complex_structure);
  const FieldPtr& f = table.field();
  const int e = f->conductor();
  const auto& units = f->units();
  const int phi = f->degree();
  const auto& G = table.group();
  if (G.order() != rho.group().order()) throw InputError("character table is for a different group");

  // V(a, j) = sigma_a(zeta^j): the power-basis coordinates c solve V c = (sigma_a(chi10(g)))_a.
  Eigen::MatrixXcd V(phi, phi);
  for (int a = 0; a < phi; ++a)
    for (int j = 0; j < phi; ++j)
      V(a, j) = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>((static_cast<long>(units[a]) * j) % e) / e);
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(V);

  HodgeCharacter out;
  out.field = f;
  for (int k = 0; k < table.classes().count; ++k) {
    const int g = table.classes().reps[k];
    Eigen::VectorXcd z(phi);
    for (int a = 0; a < phi; ++a) {
      const int h = G.power(g, units[a]);
      const Eigen::MatrixXd r = to_double(rho.rational(h));
      z(a) = std::complex<double>(0.5 * r.trace(), -0.5 * (r * J).trace());
    }
    const Eigen::VectorXcd c = lu.solve(z);
    std::vector<Rational> coeffs;
    double residual = 0;
    for (int j = 0; j < phi; ++j) {
      const double rounded = std::round(c(j).real());
      residual = std::max(residual, std::abs(c(j) - std::complex<double>(rounded, 0)));
      coeffs.emplace_back(static_cast<long>(rounded));
    }
    out.rounding_residual = std::max(out.rounding_residual, residual);
    if (!(residual <= tol.rounding))
      throw Error("RoundingFailure", "numeric character value does not round to Z[zeta]",
                  {{"class", k}, {"residual", residual}});
    CyclotomicNumber v(f, std::move(coeffs));
    if (v + v.conjugate() != f->from_rational(Rational(rho.trace(g))))
      throw Error("RoundingFailure", "chi10 + conj(chi10) differs from the trace of rho",
                  {{"class", k}, {"value", v.str()}, {"trace", rho.trace(g)}});
    out.values.push_back(std::move(v));
  }
  if (out.values[0] != f->from_rational(Rational(rho.rank() / 2)))
    throw Error("RoundingFailure", "chi10(1) differs from half the rank", {{"value", out.values[0].str()}});
  return out;
}

std::vector<long> hodge_multiplicities(const HodgeCharacter& chi10, const CharacterTable& table) {
  std::vector<long> m;
  for (int chi = 0; chi < table.size(); ++chi)
    m.push_back(exact_nonneg_integer(table.inner_product(chi10.values, chi),
                                     "multiplicity of character " + std::to_string(chi)));
  return m;
}

int SymbolicHodgeSpec::total() const {
  int t = 0;
  for (const auto& m : tau)
    for (auto [e, v] : m) t += v;
  return t;
}

void validate_hodge_symmetry(const SymbolicHodgeSpec& spec, std::optional<int> n) {
  if (spec.multiplicities.size() != spec.fields.size() || spec.tau.size() != spec.fields.size())
    throw InputError("symbolic Hodge data: fields, multiplicities and tau differ in length");
  for (std::size_t j = 0; j < spec.fields.size(); ++j) {
    const auto& f = spec.fields[j];
    const int nj = spec.multiplicities[j];
    if (nj < 0) throw InputError("negative multiplicity");
    for (auto [e, v] : spec.tau[j])
      if (std::find(f.embeddings().begin(), f.embeddings().end(), e) == f.embeddings().end())
        throw InputError("tau is keyed by " + std::to_string(e) + ", not an embedding of " + f.describe());
    for (int e : f.embeddings())
      if (!spec.tau[j].count(e)) throw InputError("tau is missing embedding " + std::to_string(e));
    for (int e : f.embeddings()) {
      const int t = spec.tau[j].at(e);
      const int tb = spec.tau[j].at(f.conjugate_embedding(e));
      if (t < 0 || t + tb != nj)
        throw Error("HSViolation", "tau(" + std::to_string(e) + ") + tau(conj) != n_j on " + f.describe(),
                    {{"field", j}, {"embedding", e}, {"tau", t}, {"tau_conjugate", tb}, {"n", nj}});
    }
  }
  if (n && spec.total() != *n)
    throw Error("HSViolation", "sum of tau is " + std::to_string(spec.total()) + ", expected " + std::to_string(*n),
                {{"total", spec.total()}, {"expected", *n}});
}

SymbolicHodgeSpec symbolic_spec_from_character(const HodgeCharacter& chi10, const CharacterTable& table,
                                               const GaloisOrbitDecomposition& orbits) {
  const auto conj = conjugate_values(chi10.values);
  SymbolicHodgeSpec spec;
  for (const auto& o : orbits.orbits) {
    const int d = table.degree(o.representative);
    spec.fields.push_back(o.field);
    const long a = exact_nonneg_integer(table.inner_product(chi10.values, o.representative), "multiplicity");
    const long b = exact_nonneg_integer(table.inner_product(conj, o.representative), "multiplicity");
    spec.multiplicities.push_back(static_cast<int>((a + b) * d));
    std::map<int, int> tau;
    for (std::size_t i = 0; i < o.members.size(); ++i)
      tau[o.residues[i]] = static_cast<int>(
          d * exact_nonneg_integer(table.inner_product(chi10.values, o.members[i]), "multiplicity"));
    spec.tau.push_back(std::move(tau));
  }
  return spec;
}

HodgeCharacter hodge_character_from_symbolic(const SymbolicHodgeSpec& spec, const CharacterTable& table,
                                             const GaloisOrbitDecomposition& orbits) {
  if (spec.fields.size() != orbits.orbits.size())
    throw InputError("symbolic Hodge data has " + std::to_string(spec.fields.size()) + " fields, the group has " +
                     std::to_string(orbits.orbits.size()));
  const FieldPtr& f = table.field();
  HodgeCharacter out;
  out.field = f;
  out.values.assign(table.classes().count, f->zero());
  for (std::size_t j = 0; j < orbits.orbits.size(); ++j) {
    const auto& o = orbits.orbits[j];
    if (!(spec.fields[j] == o.field))
      throw InputError("field " + std::to_string(j) + " is " + spec.fields[j].describe() + ", expected " +
                       o.field.describe());
    const int d = table.degree(o.representative);
    for (std::size_t i = 0; i < o.members.size(); ++i) {
      const int t = spec.tau[j].at(o.residues[i]);
      if (t % d)
        throw Error("InconsistentCharacter", "tau = " + std::to_string(t) + " is not a multiple of chi(1) = " +
                                                 std::to_string(d),
                    {{"field", j}, {"embedding", o.residues[i]}});
      if (t == 0) continue;
      for (int k = 0; k < table.classes().count; ++k)
        out.values[k] += table.value(o.members[i], k) * Rational(t / d);
    }
  }
  return out;
}

RigidityReport rigidity_by_character(const HodgeCharacter& chi10, const CharacterTable& table) {
  const auto& cls = table.classes();
  CyclotomicNumber s = chi10.field->zero();
  for (int k = 0; k < cls.count; ++k) s += chi10.values[k] * chi10.values[k] * Rational(cls.sizes[k]);
  s *= ratio(1, table.group().order());
  RigidityReport r;
  r.hom_dimension = exact_nonneg_integer(s, "(1/|G|) sum chi10(g)^2");
  r.is_rigid = r.hom_dimension == 0;
  const auto orbits = galois_orbits(table);
  r.embeddings = embedding_rows(symbolic_spec_from_character(chi10, table, orbits), &r.violations);
  r.methods.push_back({"character", r.hom_dimension, r.is_rigid});
  return r;
}

RigidityReport rigidity_by_centre(const SymbolicHodgeSpec& spec) {
  validate_hodge_symmetry(spec);
  RigidityReport r;
  r.embeddings = embedding_rows(spec, &r.violations);
  for (const auto& row : r.embeddings) r.hom_dimension += row.product;
  r.is_rigid = r.violations.empty();
  r.methods.push_back({"centre", r.hom_dimension, r.is_rigid});
  return r;
}

namespace {

/// A G-stable subspace of V (x) Q(zeta_e) containing each irreducible chi with
/// multiplicity m[chi], as a matrix of column vectors.
CycMatrix module_with_multiplicities(const IntegralRepresentation& rho, const CharacterTable& t,
                                     const std::vector<long>& m) {
  const FieldPtr& f = t.field();
  const auto& G = t.group();
  const int e = f->conductor();
  const std::size_t N = rho.rank();
  std::vector<CycMatrix> rho_c;
  for (int g = 0; g < G.order(); ++g) rho_c.push_back(to_cyclotomic(rho.rational(g), f));

  CycMatrix out(N, 0, f->zero());
  for (int chi = 0; chi < t.size(); ++chi) {
    if (m[chi] == 0) continue;
    const int d = t.degree(chi);
    const CycMatrix iso = column_basis(rho.apply(central_idempotent(t, chi), f), *f);
    if (static_cast<long>(iso.cols()) < m[chi] * d)
      throw Error("InconsistentCharacter", "character " + std::to_string(chi) + " occurs too rarely in V",
                  {{"character", chi}, {"needed", m[chi] * d}, {"available", iso.cols()}});
    // Vectors of iso that each generate one copy of the irreducible.
    CycMatrix seeds = iso;
    if (d > 1) {
      bool found = false;
      for (int k = 1; k < t.classes().count && !found; ++k) {
        const int h = t.classes().reps[k];
        const int o = t.classes().rep_orders[k];
        for (int s = 0; s < o && !found; ++s) {
          // multiplicity of zeta_o^s as an eigenvalue of h on the irreducible
          CyclotomicNumber mu = f->zero();
          for (int j = 0; j < o; ++j) mu += t.at_element(chi, G.power(h, j)) * f->zeta(-(e / o) * s * j);
          mu *= ratio(1, o);
          if (mu != f->one()) continue;
          const CyclotomicNumber lambda = f->zeta((e / o) * s);
          auto restricted = solve(iso, rho_c[h] * iso, *f);
          CycMatrix shifted = *restricted;
          for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
          seeds = iso * nullspace(shifted, *f);
          found = true;
        }
      }
      if (!found) throw std::logic_error("no eigenvalue of multiplicity one for an irreducible character");
    }
    CycMatrix span(N, 0, f->zero());
    for (long i = 0; i < m[chi]; ++i) {
      std::vector<std::vector<CyclotomicNumber>> orbit;
      const auto v = seeds.column(i);
      CycMatrix col = from_columns(std::vector<std::vector<CyclotomicNumber>>{v}, N, f->zero());
      for (int g = 0; g < G.order(); ++g) span = hconcat(span, rho_c[g] * col);
    }
    const CycMatrix basis = column_basis(span, *f);
    if (static_cast<long>(basis.cols()) != m[chi] * d)
      throw std::logic_error("generated module has the wrong dimension");
    out = hconcat(out, basis);
  }
  return out;
}

}  // namespace

long brute_force_hom_dimension(const IntegralRepresentation& rho, const HodgeCharacter& chi10,
                               const CharacterTable& table) {
  if (rho.rank() > 64) throw Error("RankTooLarge", "brute force is capped at rank 64", {{"rank", rho.rank()}});
  const FieldPtr& f = table.field();
  const auto m10 = hodge_multiplicities(chi10, table);
  std::vector<long> m01(table.size());
  for (int chi = 0; chi < table.size(); ++chi) m01[chi] = m10[table.conjugate(chi)];
  const CycMatrix U = module_with_multiplicities(rho, table, m10);
  const CycMatrix Up = module_with_multiplicities(rho, table, m01);
  const std::size_t u = U.cols(), up = Up.cols();
  if (u == 0 || up == 0) return 0;

  // X rho_{U'}(s) = rho_U(s) X for every generator s, X of size u x u'.
  std::vector<std::vector<CyclotomicNumber>> rows;
  for (int s : table.group().generators()) {
    const CycMatrix rs = to_cyclotomic(rho.rational(s), f);
    const CycMatrix A = *solve(U, rs * U, *f);
    const CycMatrix B = *solve(Up, rs * Up, *f);
    for (std::size_t i = 0; i < u; ++i)
      for (std::size_t l = 0; l < up; ++l) {
        std::vector<CyclotomicNumber> row(u * up, f->zero());
        for (std::size_t k = 0; k < up; ++k) row[i * up + k] += B(k, l);
        for (std::size_t r = 0; r < u; ++r) row[r * up + l] -= A(i, r);
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) return static_cast<long>(u * up);
  const CycMatrix system = from_columns(rows, u * up, f->zero()).transpose();
  return static_cast<long>(u * up - rank(system, *f));
}

RigidityReport analyze_rigidity(const IntegralRepresentation& rho, const HodgeCharacter& chi10,
                                const CharacterTable& table, const GaloisOrbitDecomposition& orbits,
                                bool run_brute_force) {
  RigidityReport r = rigidity_by_character(chi10, table);
  const RigidityReport centre = rigidity_by_centre(symbolic_spec_from_character(chi10, table, orbits));
  r.methods.push_back(centre.methods.front());
  if (run_brute_force) {
    const long dim = brute_force_hom_dimension(rho, chi10, table);
    r.methods.push_back({"brute_force", dim, dim == 0});
    r.dimensions_agree = dim == r.hom_dimension;
  }
  for (const auto& m : r.methods) r.verdicts_agree = r.verdicts_agree && m.rigid == r.is_rigid;
  return r;
}

std::vector<IsotypicPiece> isotypic_split(const IntegralRepresentation& rho, const GaloisOrbitDecomposition& orbits) {
  std::vector<IsotypicPiece> out;
  for (std::size_t j = 0; j < orbits.orbits.size(); ++j) {
    IsotypicPiece p;
    p.orbit = static_cast<int>(j);
    p.projector = rho.apply(orbits.orbits[j].idempotent);
    p.basis = column_basis(p.projector, Rationals{});
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<RatMatrix> centre_action(const IntegralRepresentation& rho, const CharacterTable& table,
                                     const GaloisOrbitDecomposition& orbits, int orbit) {
  const auto& o = orbits.orbits.at(orbit);
  const auto& cls = table.classes();
  const int deg = o.field.degree();
  RatMatrix phi(deg, cls.count, Rational(0));
  for (int c = 0; c < cls.count; ++c) {
    const auto coords = o.field.coordinates(table.central_character(o.representative, c));
    for (int k = 0; k < deg; ++k) phi(k, c) = coords[k];
  }
  const RatMatrix proj = rho.apply(o.idempotent);
  std::vector<RatMatrix> out;
  for (int k = 0; k < deg; ++k) {
    RatMatrix rhs(deg, 1, Rational(0));
    rhs(k, 0) = 1;
    const auto x = solve(phi, rhs, Rationals{});
    if (!x) throw std::logic_error("centre_action: class sums do not span the field");
    GroupAlgebraElement<Rational> z(table.group().order(), Rational(0));
    for (int c = 0; c < cls.count; ++c)
      for (int g : cls.members[c]) z[g] = (*x)(c, 0);
    out.push_back(rho.apply(z) * proj);
  }
  return out;
}

std::vector<std::vector<Rational>> f_module_basis(const IsotypicPiece& piece, const std::vector<RatMatrix>& action,
                                                  const std::vector<int>& order) {
  const std::size_t n = piece.projector.rows();
  std::vector<int> visit = order;
  if (visit.empty())
    for (std::size_t c = 0; c < piece.basis.cols(); ++c) visit.push_back(static_cast<int>(c));
  std::vector<std::vector<Rational>> chosen;
  RatMatrix span(n, 0, Rational(0));
  for (int c : visit) {
    if (span.cols() == piece.basis.cols()) break;
    const auto v = piece.basis.column(c);
    RatMatrix vm = from_columns(std::vector<std::vector<Rational>>{v}, n, Rational(0));
    RatMatrix block(n, 0, Rational(0));
    for (const auto& t : action) block = hconcat(block, t * vm);
    const RatMatrix trial = hconcat(span, block);
    if (rank(trial, Rationals{}) == span.cols() + action.size()) {
      span = trial;
      chosen.push_back(v);
    }
  }
  if (span.cols() != piece.basis.cols()) throw std::logic_error("f_module_basis: piece is not free over its field");
  return chosen;
}

Integer rigid_type_count(const std::vector<SubfieldSpec>& fields, const std::vector<int>& multiplicities) {
  Integer count = 1;
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (multiplicities[j] == 0) continue;
    if (fields[j].kind() == FieldKind::TotallyReal) return 0;
    count <<= fields[j].degree() / 2;
  }
  return count;
}

std::vector<SymbolicHodgeSpec> enumerate_rigid_types(const std::vector<SubfieldSpec>& fields,
                                                     const std::vector<int>& multiplicities) {
  if (sgn(rigid_type_count(fields, multiplicities)) == 0) return {};
  // one choice per conjugate pair of every active field
  std::vector<std::pair<int, int>> pairs;  // (field, smaller embedding of the pair)
  for (std::size_t j = 0; j < fields.size(); ++j) {
    if (multiplicities[j] == 0) continue;
    for (int e : fields[j].embeddings())
      if (e < fields[j].conjugate_embedding(e)) pairs.emplace_back(static_cast<int>(j), e);
  }
  if (pairs.size() > 24) throw Error("BudgetExhausted", "too many rigid types to list", {{"pairs", pairs.size()}});
  std::vector<SymbolicHodgeSpec> out;
  for (unsigned long mask = 0; mask < (1UL << pairs.size()); ++mask) {
    SymbolicHodgeSpec s;
    s.fields = fields;
    s.multiplicities = multiplicities;
    s.tau.resize(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j)
      for (int e : fields[j].embeddings()) s.tau[j][e] = 0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [j, e] = pairs[p];
      const int chosen = (mask >> p & 1UL) ? fields[j].conjugate_embedding(e) : e;
      s.tau[j][chosen] = multiplicities[j];
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rigidtori
