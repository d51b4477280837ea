#include <algorithm>
#include <functional>

#include "doctest.h"
#include "rigidtori/errors.hpp"
#include "rigidtori/fixtures.hpp"
#include "rigidtori/hodge.hpp"

using namespace rigidtori;

namespace {

IntMatrix int_matrix(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows[0].size(), Integer(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

const GaloisOrbit& orbit_of_degree(const GaloisOrbitDecomposition& o, int degree) {
  for (const auto& x : o.orbits)
    if (x.field.degree() == degree) return x;
  throw std::logic_error("no orbit of that degree");
}

std::string error_name(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  } catch (const InputError&) {
    return "InputError";
  }
  return "";
}

}  // namespace

TEST_CASE("numeric Hodge characters") {
  FixtureRng rng(9);
  for (int rank : {2, 4, 6}) {
    const Fixture f = trivial_fixture(rank, rng);
    const auto chi = hodge_character_from_numeric(f.rho, f.J, *f.table);
    CHECK(chi.values[0] == f.table->field()->from_rational(Rational(rank / 2)));
  }
  const Fixture g = gaussian_fixture();
  const auto chi = hodge_character_from_numeric(g.rho, g.J, *g.table);
  const int gen = g.rho.group().generators().front();
  // V^{1,0} is the i-eigenspace of J = rho(gen), so gen acts there by i
  CHECK(g.table->classes().class_of.size() == 4);
  CHECK(chi.values[g.table->classes().class_of[gen]] == g.table->field()->zeta(g.table->field()->conductor() / 4));

  for (const auto& fx : random_fixtures(30, 17)) {
    const auto c = hodge_character_from_numeric(fx.rho, fx.J, *fx.table);
    CHECK(c.values == fx.expected_chi10);
    const auto& reps = fx.table->classes().reps;
    for (std::size_t k = 0; k < reps.size(); ++k)
      CHECK(c.values[k] + c.values[k].conjugate() == fx.table->field()->from_rational(Rational(fx.rho.trace(reps[k]))));
  }

  Eigen::MatrixXd bad = g.J;
  bad(0, 0) += 1e-3;
  CHECK(error_name([&] { validate_complex_structure(g.rho, bad, 1e-10); }) == "InvalidComplexStructure");
}

TEST_CASE("character formula for the hom dimension") {
  FixtureRng rng(2);
  for (int n : {1, 2, 3}) {
    const Fixture f = trivial_fixture(2 * n, rng);
    const auto chi = hodge_character_from_numeric(f.rho, f.J, *f.table);
    const auto r = rigidity_by_character(chi, *f.table);
    CHECK(r.hom_dimension == n * n);
    CHECK(!r.is_rigid);
  }
  const Fixture g = gaussian_fixture();
  CHECK(rigidity_by_character({g.table->field(), g.expected_chi10}, *g.table).hom_dimension == 0);

  // Z/2 acting by -1 on rank 2: chi10(g) = -1
  const auto z2 = IntegralRepresentation::from_generators({int_matrix({{-1, 0}, {0, -1}})});
  const CharacterTable t2 = character_table(z2.group());
  const auto f2 = t2.field();
  const HodgeCharacter c2{f2, {f2->one(), f2->from_rational(-1)}};
  const auto r2 = rigidity_by_character(c2, t2);
  CHECK(r2.hom_dimension == 1);
  CHECK(!r2.is_rigid);

  const HodgeCharacter half{f2, {f2->one(), f2->zero()}};
  CHECK(error_name([&] { hodge_multiplicities(half, t2); }) == "InconsistentCharacter");
}

TEST_CASE("centre criterion") {
  const CharacterTable t4 = character_table(FiniteGroup::cyclic(4));
  const auto o4 = galois_orbits(t4);
  const SubfieldSpec qi = orbit_of_degree(o4, 2).field;
  CHECK(rigidity_by_centre({{qi}, {1}, {{{1, 1}, {3, 0}}}}).is_rigid);

  const SubfieldSpec q = orbit_of_degree(o4, 1).field;
  const auto real = rigidity_by_centre({{q}, {2}, {{{1, 1}}}});
  CHECK(!real.is_rigid);
  CHECK(real.violations.size() == 1);

  const CharacterTable t5 = character_table(FiniteGroup::cyclic(5));
  const SubfieldSpec q5 = orbit_of_degree(galois_orbits(t5), 4).field;
  CHECK(rigidity_by_centre({{q5}, {1}, {{{1, 1}, {2, 1}, {3, 0}, {4, 0}}}}).is_rigid);
  CHECK(!rigidity_by_centre({{q5}, {2}, {{{1, 1}, {2, 2}, {3, 0}, {4, 1}}}}).is_rigid);

  CHECK(error_name([&] { validate_hodge_symmetry({{qi}, {1}, {{{1, 1}, {3, 1}}}}); }) == "HSViolation");
  CHECK(error_name([&] { validate_hodge_symmetry({{q}, {1}, {{{1, 1}}}}, 1); }) == "HSViolation");
  CHECK(error_name([&] { validate_hodge_symmetry({{qi}, {1}, {{{1, 1}}}}); }) == "InputError");
}

TEST_CASE("brute-force oracle on small cases") {
  FixtureRng rng(4);
  const Fixture f = trivial_fixture(2, rng);
  CHECK(brute_force_hom_dimension(f.rho, hodge_character_from_numeric(f.rho, f.J, *f.table), *f.table) == 1);
  const Fixture e = eisenstein_fixture();
  CHECK(brute_force_hom_dimension(e.rho, hodge_character_from_numeric(e.rho, e.J, *e.table), *e.table) == 0);
}

TEST_CASE("three rigidity methods agree on random fixtures") {
  for (const auto& f : random_fixtures(60, 99)) {
    CAPTURE(f.name);
    const auto orbits = galois_orbits(*f.table);
    const auto chi = hodge_character_from_numeric(f.rho, f.J, *f.table);
    const auto r = analyze_rigidity(f.rho, chi, *f.table, orbits, true);
    CHECK(r.verdicts_agree);
    CHECK(r.dimensions_agree);
    CHECK(r.is_rigid == (r.hom_dimension == 0));
    CHECK(r.is_rigid == r.violations.empty());
  }
}

TEST_CASE("isotypic projectors") {
  FixtureRng rng(1);
  const Fixture triv = trivial_fixture(4, rng);
  const auto pieces = isotypic_split(triv.rho, galois_orbits(*triv.table));
  REQUIRE(pieces.size() == 1);
  CHECK(pieces[0].projector == identity(4, Rationals{}));

  const Fixture g = gaussian_fixture();
  const auto og = galois_orbits(*g.table);
  for (const auto& p : isotypic_split(g.rho, og)) {
    if (og.orbits[p.orbit].kind == FieldKind::CM)
      CHECK(p.projector == identity(2, Rationals{}));
    else
      CHECK(is_zero_matrix(p.projector));
  }

  const auto reg = regular_representation(FiniteGroup::cyclic(3));
  const CharacterTable t3 = character_table(reg.group());
  std::vector<std::size_t> ranks;
  for (const auto& p : isotypic_split(reg, galois_orbits(t3))) ranks.push_back(rank(p.projector, Rationals{}));
  std::sort(ranks.begin(), ranks.end());
  CHECK(ranks == std::vector<std::size_t>{1, 2});

  for (const char* name : {"Z4", "S3", "Q8", "D12"}) {
    const auto rho = regular_representation(catalogue_group(name));
    const CharacterTable t = character_table(rho.group());
    const auto ps = isotypic_split(rho, galois_orbits(t));
    RatMatrix sum(rho.rank(), rho.rank(), Rational(0));
    for (std::size_t i = 0; i < ps.size(); ++i) {
      CHECK(ps[i].projector * ps[i].projector == ps[i].projector);
      for (std::size_t j = 0; j < ps.size(); ++j)
        if (i != j) CHECK(is_zero_matrix(ps[i].projector * ps[j].projector));
      sum += ps[i].projector;
    }
    CHECK(sum == identity(rho.rank(), Rationals{}));
  }
}

TEST_CASE("F-module bases") {
  const auto reg = regular_representation(FiniteGroup::cyclic(4));
  const CharacterTable t = character_table(reg.group());
  const auto o = galois_orbits(t);
  for (const auto& p : isotypic_split(reg, o)) {
    if (o.orbits[p.orbit].kind != FieldKind::CM) continue;
    CHECK(f_module_basis(p, centre_action(reg, t, o, p.orbit)).size() == 1);
  }
  const auto twice = IntegralRepresentation::direct_sum(reg, reg);
  for (const auto& p : isotypic_split(twice, o)) {
    if (o.orbits[p.orbit].kind != FieldKind::CM) continue;
    const auto action = centre_action(twice, t, o, p.orbit);
    const auto basis = f_module_basis(p, action);
    REQUIRE(basis.size() == 2);
    std::vector<std::vector<Rational>> vs;
    for (const auto& v : basis)
      for (const auto& T : action) {
        RatMatrix col(twice.rank(), 1, Rational(0));
        for (int i = 0; i < twice.rank(); ++i) col(i, 0) = v[i];
        vs.push_back((T * col).column(0));
      }
    CHECK(rank(from_columns(vs, twice.rank(), Rational(0)), Rationals{}) == 4);
  }
}

TEST_CASE("rigid type enumeration") {
  const CharacterTable t4 = character_table(FiniteGroup::cyclic(4));
  const auto o4 = galois_orbits(t4);
  const SubfieldSpec qi = orbit_of_degree(o4, 2).field, q = orbit_of_degree(o4, 1).field;
  CHECK(enumerate_rigid_types({qi}, {1}).size() == 2);
  CHECK(enumerate_rigid_types({q, qi}, {2, 1}).empty());
  CHECK(rigid_type_count({q, qi}, {2, 1}) == 0);
  CHECK(enumerate_rigid_types({q, qi}, {0, 3}).size() == 2);

  const CharacterTable t5 = character_table(FiniteGroup::cyclic(5));
  const SubfieldSpec q5 = orbit_of_degree(galois_orbits(t5), 4).field;
  const auto types = enumerate_rigid_types({q5}, {1});
  CHECK(types.size() == 4);
  for (const auto& s : types) CHECK(rigidity_by_centre(s).is_rigid);
  CHECK(rigid_type_count({q5}, {1}) == 4);

  FixtureRng rng(6);
  for (const char* name : {"S3", "S4"}) {
    const CharacterTable t = character_table(catalogue_group(name));
    const auto o = galois_orbits(t);
    std::vector<SubfieldSpec> fields;
    for (const auto& x : o.orbits) fields.push_back(x.field);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> mult;
      for (std::size_t j = 0; j < fields.size(); ++j) mult.push_back(rng.below(3));
      if (std::all_of(mult.begin(), mult.end(), [](int m) { return m == 0; })) mult[0] = 1;
      CHECK(enumerate_rigid_types(fields, mult).empty());
    }
  }
}
