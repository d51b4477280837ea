#include <Eigen/Eigenvalues>
#include <functional>

#include "doctest.h"
#include "rigidtori/errors.hpp"
#include "rigidtori/fixtures.hpp"
#include "rigidtori/polarize.hpp"

using namespace rigidtori;

namespace {

std::string error_name(const std::function<void()>& f, nlohmann::json* witness = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (witness) *witness = e.witness();
    return e.name();
  } catch (const InputError&) {
    return "InputError";
  }
  return "";
}

SubfieldSpec cm_field(int m) {
  const CharacterTable t = character_table(FiniteGroup::cyclic(m));
  for (const auto& o : galois_orbits(t).orbits)
    if (o.field.degree() == t.field()->degree()) return o.field;
  throw std::logic_error("no faithful orbit");
}

RatMatrix rat(std::vector<std::vector<long>> rows) {
  RatMatrix m(rows.size(), rows[0].size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

struct Prepared {
  CharacterTable table;
  GaloisOrbitDecomposition orbits;
  SymbolicHodgeSpec spec;
};

Prepared prepare(const IntegralRepresentation& rho, const Eigen::MatrixXd& J) {
  Prepared p{character_table(rho.group()), {}, {}};
  p.orbits = galois_orbits(p.table);
  p.spec = symbolic_spec_from_character(hodge_character_from_numeric(rho, J, p.table), p.table, p.orbits);
  return p;
}

}  // namespace

TEST_CASE("imaginary subspaces") {
  const SubfieldSpec qi = cm_field(4);
  const auto bi = imaginary_subspace(qi);
  REQUIRE(bi.size() == 1);
  CHECK(bi[0].conjugate() == -bi[0]);

  const SubfieldSpec q5 = cm_field(5);
  const auto b5 = imaginary_subspace(q5);
  REQUIRE(b5.size() == 2);
  const auto z = q5.ambient()->zeta();
  const std::vector<CyclotomicNumber> expected = {z - z.galois(4), z.galois(2) - z.galois(3)};
  std::vector<std::vector<Rational>> cols;
  for (const auto& x : b5) cols.push_back(x.coeffs());
  for (const auto& x : expected) cols.push_back(x.coeffs());
  CHECK(rank(from_columns(cols, 4, Rational(0)), Rationals{}) == 2);

  const CharacterTable t1 = character_table(catalogue_group("Z1"));
  CHECK(error_name([&] { imaginary_subspace(galois_orbits(t1).orbits[0].field); }) == "RealEmbeddingPresent");
}

TEST_CASE("zeta with prescribed signs") {
  const SubfieldSpec qi = cm_field(4);
  const auto zi = find_zeta(qi, {1});
  const auto i = qi.ambient()->zeta();
  CHECK(zi.zeta.conjugate() == -zi.zeta);
  // a positive rational multiple of i
  CHECK(zi.zeta.coeffs()[0] == 0);
  CHECK(zi.zeta.coeffs()[1] > 0);
  CHECK(zi.signs.at(1) == 1);
  CHECK(zi.signs.at(3) == -1);

  const SubfieldSpec q3 = cm_field(3);
  const auto z3 = find_zeta(q3, {1});
  const auto w = q3.ambient()->zeta();
  const CyclotomicNumber ratio3 = z3.zeta / (w - w * w);
  CHECK(ratio3.is_rational());
  CHECK(ratio3.rational_value() > 0);

  const SubfieldSpec q5 = cm_field(5);
  const auto z5 = find_zeta(q5, {1, 3});
  CHECK(certified_sign_imag(z5.zeta, 1) == 1);
  CHECK(certified_sign_imag(z5.zeta, 3) == 1);
  CHECK(certified_sign_imag(z5.zeta, 2) == -1);
  CHECK(certified_sign_imag(z5.zeta, 4) == -1);
  (void)i;
}

TEST_CASE("trace forms") {
  const SubfieldSpec qi = cm_field(4);
  const auto f = qi.ambient();
  const CyclotomicNumber i = f->zeta();
  const RatMatrix E = trace_form(qi, i, {f->one(), i});
  // Tr(i x conj y) = 2(ad - bc) for x = a + bi, y = c + di
  auto oracle = [](long a, long b, long c, long d) { return 2 * (a * d - b * c); };
  CHECK(E == rat({{oracle(1, 0, 1, 0), oracle(1, 0, 0, 1)}, {oracle(0, 1, 1, 0), oracle(0, 1, 0, 1)}}));
  CHECK(E == rat({{0, 2}, {-2, 0}}));

  const SubfieldSpec q5 = cm_field(5);
  const auto z5 = find_zeta(q5, {1, 2}).zeta;
  const RatMatrix E5 = trace_form(q5, z5, q5.basis());
  CHECK(E5.transpose() == -E5);
  CHECK(trace_form(q5, z5 * ratio(3, 7), q5.basis()) == E5 * ratio(3, 7));
}

TEST_CASE("polarization of the Gaussian and Eisenstein curves") {
  const Fixture g = gaussian_fixture();
  const auto og = galois_orbits(*g.table);
  const PolarizationForm form = assemble_polarization(g.rho, g.J, *g.table, og);
  CHECK(form.E == to_integer(rat({{0, 1}, {-1, 0}})));
  CHECK(form.certificate.passed());

  const Prepared p = prepare(g.rho, g.J);
  const PolarizationCertificate c = verify_polarization(rat({{0, 2}, {-2, 0}}), g.rho, p.table, p.orbits, p.spec);
  CHECK(c.passed());
  // E(x, Jx) = 2(a^2 + b^2) for J = rotation, on small integer vectors
  const Eigen::Matrix2d E{{0, 2}, {-2, 0}};
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) {
      const Eigen::Vector2d x(a, b);
      CHECK(x.dot(E * (g.J * x)) == doctest::Approx(2.0 * (a * a + b * b)));
    }
  nlohmann::json witness;
  CHECK(error_name([&] { verify_polarization(rat({{0, -2}, {2, 0}}), g.rho, p.table, p.orbits, p.spec); },
                   &witness) == "NotPositiveDefinite");
  CHECK(witness.contains("x"));
  CHECK(error_name([&] { verify_polarization(rat({{1, 0}, {0, 1}}), g.rho, p.table, p.orbits, p.spec); }) ==
        "InputError");

  const Fixture e = eisenstein_fixture();
  CHECK(assemble_polarization(e.rho, e.J, *e.table, galois_orbits(*e.table)).certificate.passed());

  FixtureRng rng(3);
  const Fixture t = trivial_fixture(4, rng);
  CHECK(error_name([&] { assemble_polarization(t.rho, t.J, *t.table, galois_orbits(*t.table)); }) == "NotRigid");
}

TEST_CASE("two rigid Gaussian copies give a block-diagonal form") {
  const Fixture g = gaussian_fixture();
  const auto rho = IntegralRepresentation::direct_sum(g.rho, g.rho);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(4, 4);
  J.topLeftCorner(2, 2) = g.J;
  J.bottomRightCorner(2, 2) = g.J;
  const CharacterTable t = character_table(rho.group());
  const PolarizationForm form = assemble_polarization(rho, J, t, galois_orbits(t));
  CHECK(form.certificate.passed());
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j) CHECK(is_zero(form.E(i, j)));
  CHECK(form.E(0, 1) > 0);
  CHECK(form.E(2, 3) > 0);
  CHECK(is_zero(form.E(0, 0)));
}

TEST_CASE("rigid random fixtures: verification, basis independence, invariance, scaling") {
  int rigid = 0;
  for (const auto& f : random_fixtures(60, 5)) {
    const Prepared p = prepare(f.rho, f.J);
    if (!rigidity_by_centre(p.spec).is_rigid) continue;
    ++rigid;
    CAPTURE(f.name);
    const PolarizationForm a = assemble_polarization(f.rho, p.table, p.orbits, p.spec);
    CHECK(a.certificate.passed());
    const RatMatrix Ea = to_rational(a.E);
    CHECK(verify_polarization(Ea * ratio(5, 3), f.rho, p.table, p.orbits, p.spec).passed());

    PolarizationOptions opts;
    opts.basis_seed = 7;
    opts.g_invariant = true;
    const PolarizationForm b = assemble_polarization(f.rho, p.table, p.orbits, p.spec, opts);
    CHECK(b.certificate.passed());
    CHECK(b.certificate.g_invariant);
    const RatMatrix Eb = to_rational(b.E);
    for (int g = 0; g < f.rho.group().order(); ++g)
      CHECK(f.rho.rational(g).transpose() * Eb * f.rho.rational(g) == Eb);
    CHECK(assemble_polarization(f.rho, f.J, p.table, p.orbits).certificate.passed());
  }
  CHECK(rigid > 5);
}

TEST_CASE("polarization existence on polynomial fields") {
  const auto gi = polarization_exists(QPoly::from_integers({1, 0, 1}), upper_half_plane_type(PolynomialField::make(QPoly::from_integers({1, 0, 1}))));
  CHECK(gi.exists);
  REQUIRE(gi.witness.size() == 2);
  CHECK(gi.witness[0] == 0);
  CHECK(gi.witness[1] > 0);

  const QPoly quartic = QPoly::from_integers({1, 1, 0, 0, 1});
  const PolynomialField F = PolynomialField::make(quartic);
  CHECK(F.real_root_count() == 0);
  CHECK(!F.complex_conjugation());
  const auto bad = polarization_exists(quartic, upper_half_plane_type(F));
  CHECK(!bad.exists);
  CHECK(bad.obstruction.contains("pair"));
  CHECK(bad.obstruction["imaginary_space_dimension"] == 0);

  // Phi_5 with the type {sigma_1, sigma_2}: check the witness against roots from an independent eigen solve
  const QPoly phi5 = QPoly::from_integers({1, 1, 1, 1, 1});
  const PolynomialField F5 = PolynomialField::make(phi5);
  const std::vector<int> S = upper_half_plane_type(F5);
  const auto c5 = polarization_exists(phi5, S);
  REQUIRE(c5.exists);
  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1;
  for (int i = 0; i < 4; ++i) companion(i, 3) = -1;
  const Eigen::Vector4cd roots = companion.eigenvalues();
  for (int j : S) {
    const std::complex<double> alpha = F5.roots()[j].midpoint();
    double best = 1e9;
    for (int k = 0; k < 4; ++k) best = std::min(best, std::abs(roots(k) - alpha));
    CHECK(best < 1e-9);
    std::complex<double> value = 0, power = 1;
    for (const auto& c : c5.witness) {
      value += c.get_d() * power;
      power *= alpha;
    }
    CHECK(value.imag() > 0);
    CHECK(alpha.imag() > 0);
  }
  CHECK(error_name([&] { polarization_exists(QPoly::from_integers({-2, 0, 1}), {0}); }) == "NotTotallyImaginary");
}

TEST_CASE("existence agrees with the CM tag on character fields") {
  for (const char* name : {"Z3", "Z4", "Z5", "S3", "Q8", "Z8", "D8", "Z12", "Dic12", "Z15", "Z16"}) {
    const CharacterTable t = character_table(catalogue_group(name));
    for (const auto& o : galois_orbits(t).orbits) {
      std::vector<int> S;
      for (int e : o.field.embeddings())
        if (e <= o.field.conjugate_embedding(e)) S.push_back(e);
      const auto c = polarization_exists(o.field, S);
      CHECK(c.exists == (o.kind == FieldKind::CM));
      const QPoly f = defining_polynomial(o.field);
      CHECK(f.degree() == o.field.degree());
      if (o.kind == FieldKind::CM) {
        const PolynomialField F = PolynomialField::make(f);
        CHECK(polarization_exists(f, upper_half_plane_type(F)).exists);
      } else {
        CHECK(error_name([&] { polarization_exists(f, {}); }) == "NotTotallyImaginary");
      }
    }
  }
}
