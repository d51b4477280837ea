#include <algorithm>

#include "doctest.h"
#include "rigidtori/character.hpp"
#include "rigidtori/group.hpp"

using namespace rigidtori;

namespace {

std::vector<int> sorted_sizes(const FiniteGroup& g) {
  auto s = conjugacy_classes(g).sizes;
  std::sort(s.begin(), s.end());
  return s;
}

FiniteGroup s3_perm() { return FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3"); }

}  // namespace

TEST_CASE("conjugacy classes of small groups") {
  CHECK(sorted_sizes(s3_perm()) == std::vector<int>{1, 2, 3});
  CHECK(sorted_sizes(catalogue_group("Q8")) == std::vector<int>{1, 1, 2, 2, 2});
  for (const auto& e : group_catalogue()) {
    const auto c = conjugacy_classes(e.group);
    int total = 0;
    for (int s : c.sizes) {
      CHECK(e.group.order() % s == 0);
      total += s;
    }
    CHECK(total == e.group.order());
    if (e.group.is_abelian()) CHECK(static_cast<int>(c.sizes.size()) == e.group.order());
    CHECK(e.group.order() % e.group.exponent() == 0);
  }
}

TEST_CASE("character table of Z/4 is the table of i^(jk)") {
  const FiniteGroup g = FiniteGroup::cyclic(4);
  const CharacterTable t = character_table(g);
  const auto f = t.field();
  REQUIRE(t.size() == 4);
  int gen = 1;
  while (g.element_order(gen) != 4) ++gen;
  std::vector<std::vector<CyclotomicNumber>> expected, got;
  for (int k = 0; k < 4; ++k) {
    std::vector<CyclotomicNumber> row, mine;
    for (int j = 0; j < 4; ++j) {
      row.push_back(f->zeta(static_cast<long>(j) * k % 4));
      mine.push_back(t.at_element(k, g.power(gen, j)));
    }
    expected.push_back(row);
    got.push_back(mine);
  }
  std::sort(expected.begin(), expected.end());
  std::sort(got.begin(), got.end());
  CHECK(got == expected);
}

TEST_CASE("character table of S3 and of the trivial group") {
  const CharacterTable t = character_table(s3_perm());
  REQUIRE(t.size() == 3);
  CHECK(t.degree(0) == 1);
  CHECK(t.degree(1) == 1);
  CHECK(t.degree(2) == 2);
  const auto& cl = t.classes();
  // values by element order: identity, transpositions (order 2), 3-cycles (order 3)
  auto by_order = [&](int chi, int order) {
    for (std::size_t k = 0; k < cl.reps.size(); ++k)
      if (cl.rep_orders[k] == order) return t.value(chi, static_cast<int>(k)).rational_value();
    return Rational(99);
  };
  CHECK(by_order(0, 2) == 1);
  CHECK(by_order(1, 2) == -1);
  CHECK(by_order(1, 3) == 1);
  CHECK(by_order(2, 1) == 2);
  CHECK(by_order(2, 2) == 0);
  CHECK(by_order(2, 3) == -1);

  const CharacterTable one = character_table(catalogue_group("Z1"));
  REQUIRE(one.size() == 1);
  CHECK(one.value(0, 0) == one.field()->one());
}

TEST_CASE("central idempotents") {
  const FiniteGroup g = s3_perm();
  const CharacterTable t = character_table(g);
  const auto f = t.field();
  const auto e0 = central_idempotent(t, 0);
  for (int x = 0; x < g.order(); ++x) CHECK(e0[x] == f->from_rational(ratio(1, 6)));

  // sign character: (1/6)(sum even - sum odd); in S3 the odd elements are the involutions
  const auto e1 = central_idempotent(t, 1);
  for (int x = 0; x < g.order(); ++x)
    CHECK(e1[x] == f->from_rational(ratio(g.element_order(x) == 2 ? -1 : 1, 6)));

  auto sum = e0;
  for (int chi = 1; chi < t.size(); ++chi) {
    const auto e = central_idempotent(t, chi);
    for (int x = 0; x < g.order(); ++x) sum[x] += e[x];
  }
  CHECK(sum[0] == f->one());
  for (int x = 1; x < g.order(); ++x) CHECK(sum[x].is_zero());
}

TEST_CASE("Galois orbits and centre decompositions") {
  {
    const CharacterTable t = character_table(FiniteGroup::cyclic(4));
    const auto o = galois_orbits(t);
    REQUIRE(o.orbits.size() == 3);
    std::vector<std::pair<int, FieldKind>> got;
    for (const auto& x : o.orbits) got.push_back({x.field.degree(), x.kind});
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::pair<int, FieldKind>>{
                     {1, FieldKind::TotallyReal}, {1, FieldKind::TotallyReal}, {2, FieldKind::CM}});
    CHECK(centre_decomposition(t, o).size() == 3);
  }
  {
    const CharacterTable t = character_table(FiniteGroup::cyclic(3));
    const auto o = galois_orbits(t);
    REQUIRE(o.orbits.size() == 2);
    CHECK(o.orbits[0].field.describe() == "Q");
    CHECK(o.orbits[1].kind == FieldKind::CM);
    CHECK(o.orbits[1].members.size() == 2);
  }
  for (const char* name : {"S3", "S4"}) {
    const CharacterTable t = character_table(catalogue_group(name));
    const auto o = galois_orbits(t);
    CHECK(static_cast<int>(o.orbits.size()) == t.size());
    for (const auto& x : o.orbits) {
      CHECK(x.field.degree() == 1);
      CHECK(x.kind == FieldKind::TotallyReal);
    }
  }
  const CharacterTable one = character_table(catalogue_group("Z1"));
  const auto c = centre_decomposition(one, galois_orbits(one));
  REQUIRE(c.size() == 1);
  CHECK(c[0].field.describe() == "Q");
}

TEST_CASE("orthogonality, idempotents and field tags on every catalogue group") {
  for (const auto& e : group_catalogue()) {
    CAPTURE(e.name);
    const FiniteGroup& g = e.group;
    const CharacterTable t = character_table(g);
    const auto& cl = t.classes();
    const auto f = t.field();
    REQUIRE(t.size() == static_cast<int>(cl.reps.size()));
    long squares = 0;
    for (int i = 0; i < t.size(); ++i) {
      squares += static_cast<long>(t.degree(i)) * t.degree(i);
      for (int j = 0; j < t.size(); ++j)
        CHECK(t.inner_product(t.row(i), j) == f->from_rational(Rational(i == j)));
    }
    CHECK(squares == g.order());
    for (std::size_t a = 0; a < cl.reps.size(); ++a)
      for (std::size_t b = 0; b < cl.reps.size(); ++b) {
        CyclotomicNumber s = f->zero();
        for (int chi = 0; chi < t.size(); ++chi) s += t.value(chi, a) * t.value(chi, b).conjugate();
        CHECK(s == f->from_rational(a == b ? ratio(g.order(), cl.sizes[a]) : Rational(0)));
      }

    const auto o = galois_orbits(t);
    std::vector<Rational> total(g.order(), Rational(0));
    for (std::size_t i = 0; i < o.orbits.size(); ++i) {
      const auto& ei = o.orbits[i].idempotent;
      CHECK(group_algebra_multiply(g, ei, ei) == ei);
      for (std::size_t j = i + 1; j < o.orbits.size(); ++j) {
        const auto p = group_algebra_multiply(g, ei, o.orbits[j].idempotent);
        CHECK(std::all_of(p.begin(), p.end(), [](const Rational& q) { return is_zero(q); }));
      }
      for (int x = 0; x < g.order(); ++x) total[x] += ei[x];
      bool nonreal = false;
      for (int chi : o.orbits[i].members)
        for (const auto& v : t.row(chi)) nonreal = nonreal || !(v == v.conjugate());
      CHECK((o.orbits[i].kind == FieldKind::CM) == nonreal);
    }
    CHECK(total[0] == 1);
    for (int x = 1; x < g.order(); ++x) CHECK(is_zero(total[x]));
  }
}

TEST_CASE("permutation presentation and Cayley table give the same characters") {
  const FiniteGroup s4 = FiniteGroup::from_permutations({{1, 0, 2, 3}, {1, 2, 3, 0}}, "S4");
  const FiniteGroup copy = FiniteGroup::from_cayley_table(s4.table(), "S4 table");
  const CharacterTable a = character_table(s4), b = character_table(copy);
  REQUIRE(a.size() == b.size());
  for (int chi = 0; chi < a.size(); ++chi)
    for (int x = 0; x < s4.order(); ++x) CHECK(a.at_element(chi, x) == b.at_element(chi, x));
}
