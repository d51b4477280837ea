#include <map>

#include "rigidtori/errors.hpp"
#include "rigidtori/group.hpp"

namespace rigidtori {

namespace {

using G = FiniteGroup;

G named(G g, const std::string& name) {
  // Rebuild with the catalogue name; construction is cheap at these orders.
  return G::from_cayley_table(g.table(), name);
}

G dihedral(int n, const std::string& name) { return G::metacyclic(n, 2, n - 1, 0, name); }

std::vector<CatalogueEntry> build() {
  std::vector<CatalogueEntry> out;
  auto add = [&](const std::string& name, G g) { out.push_back({name, named(std::move(g), name)}); };
  auto z = [](int n) { return G::cyclic(n); };
  auto x = [](const G& a, const G& b) { return G::direct_product(a, b); };

  add("Z1", z(1));
  add("Z2", z(2));
  add("Z3", z(3));
  add("Z4", z(4));
  add("Z2^2", x(z(2), z(2)));
  add("Z5", z(5));
  add("Z6", z(6));
  add("S3", dihedral(3, "S3"));
  add("Z7", z(7));
  add("Z8", z(8));
  add("Z4xZ2", x(z(4), z(2)));
  add("Z2^3", x(x(z(2), z(2)), z(2)));
  add("D8", dihedral(4, "D8"));
  add("Q8", G::metacyclic(4, 2, 3, 2, "Q8"));
  add("Z9", z(9));
  add("Z3^2", x(z(3), z(3)));
  add("Z10", z(10));
  add("D10", dihedral(5, "D10"));
  add("Z11", z(11));
  add("Z12", z(12));
  add("Z6xZ2", x(z(6), z(2)));
  add("D12", dihedral(6, "D12"));
  add("A4", G::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4"));
  add("Dic12", G::metacyclic(6, 2, 5, 3, "Dic12"));
  add("Z13", z(13));
  add("Z14", z(14));
  add("D14", dihedral(7, "D14"));
  add("Z15", z(15));

  add("Z16", z(16));
  add("Z4xZ4", x(z(4), z(4)));
  {
    // (Z4 x Z2) x| Z2 with c a c^-1 = a b, c b c^-1 = b; index of (a^i, b^j) is i + 4 j.
    const G n = x(z(4), z(2));
    std::vector<int> aut(8);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j) aut[i + 4 * j] = i + 4 * ((j + i) % 2);
    add("(Z4xZ2):Z2", G::semidirect(n, aut, 2));
  }
  add("Z4:Z4", G::metacyclic(4, 4, 3, 0));
  add("Z8xZ2", x(z(8), z(2)));
  add("M16", G::metacyclic(8, 2, 5, 0));
  add("D16", dihedral(8, "D16"));
  add("SD16", G::metacyclic(8, 2, 3, 0));
  add("Q16", G::metacyclic(8, 2, 7, 4));
  add("Z4xZ2^2", x(x(z(4), z(2)), z(2)));
  add("Z2xD8", x(z(2), dihedral(4, "D8")));
  add("Z2xQ8", x(z(2), G::metacyclic(4, 2, 3, 2)));
  {
    // Central product Z4 o D8: (Z4 x D8) / <(2, a^2)>; (u, d) has index u + 4 d.
    const G big = x(z(4), dihedral(4, "D8"));
    add("Pauli", G::quotient(big, {2 + 4 * 2}));
  }
  add("Z2^4", x(x(z(2), z(2)), x(z(2), z(2))));

  add("S4", G::from_permutations({{1, 2, 3, 0}, {1, 0, 2, 3}}, "S4"));
  return out;
}

}  // namespace

const std::vector<CatalogueEntry>& group_catalogue() {
  static const std::vector<CatalogueEntry> catalogue = build();
  return catalogue;
}

const FiniteGroup& catalogue_group(const std::string& name) {
  for (const auto& e : group_catalogue())
    if (e.name == name) return e.group;
  throw InputError("unknown catalogue group: " + name);
}

}  // namespace rigidtori
