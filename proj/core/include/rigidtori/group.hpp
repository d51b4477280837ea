#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace rigidtori {

/// A finite group as a multiplication table on 0..n-1 with 0 the identity.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<int>>;

  /// Validates latin-square structure, the identity at 0, and associativity
  /// (exhaustive up to order 64, sampled above). Throws InputError.
  static FiniteGroup from_cayley_table(Table table, std::string name = "");
  /// One-line permutations of {0..k-1}; (g h)(x) = g(h(x)). Closure capped at 10000.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators, std::string name = "");

  static FiniteGroup cyclic(int n);
  /// Elements a^i x^j (0 <= i < n, 0 <= j < m) with a^n = 1, x a x^-1 = a^r,
  /// x^m = a^s. Requires r^m = 1 and r s = s mod n.
  static FiniteGroup metacyclic(int n, int m, int r, int s, std::string name = "");
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string name = "");
  /// N x| Z/k where the generator of Z/k acts on N by the automorphism `aut`
  /// (a permutation of N's element indices).
  static FiniteGroup semidirect(const FiniteGroup& n, const std::vector<int>& aut, int k, std::string name = "");
  /// G / <normal_generators>; throws InputError if the subgroup is not normal.
  static FiniteGroup quotient(const FiniteGroup& g, const std::vector<int>& normal_generators, std::string name = "");

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  int mul(int g, int h) const { return table_[static_cast<std::size_t>(g) * n_ + h]; }
  int inverse(int g) const { return inv_[g]; }
  int power(int g, long k) const;
  int element_order(int g) const { return ord_[g]; }
  int exponent() const { return exponent_; }
  bool is_abelian() const;
  /// A small generating set, chosen greedily in index order.
  const std::vector<int>& generators() const { return gens_; }
  /// Elements of the subgroup generated by `gens`, ascending.
  std::vector<int> subgroup(const std::vector<int>& gens) const;
  Table table() const;

 private:
  FiniteGroup(int n, std::vector<int> flat, std::string name);
  static FiniteGroup validated(int n, std::vector<int> flat, std::string name);
  int n_ = 0;
  std::string name_;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::vector<int> ord_;
  int exponent_ = 1;
  std::vector<int> gens_;
};

/// Breadth-first closure of `generators` under right multiplication, starting
/// from `identity`. Returns the elements in discovery order (identity first)
/// and the flat Cayley table. Throws InputError beyond `cap` elements.
template <class Elem, class Mul, class Less = std::less<Elem>>
std::pair<std::vector<Elem>, std::vector<int>> closure(const Elem& identity, const std::vector<Elem>& generators,
                                                       Mul mul, std::size_t cap);

struct CatalogueEntry {
  std::string name;
  FiniteGroup group;
};

/// Every group of order <= 16 up to isomorphism (42 groups) followed by S4.
const std::vector<CatalogueEntry>& group_catalogue();
/// Throws InputError for an unknown name.
const FiniteGroup& catalogue_group(const std::string& name);

}  // namespace rigidtori

#include "rigidtori/errors.hpp"

namespace rigidtori {

template <class Elem, class Mul, class Less>
std::pair<std::vector<Elem>, std::vector<int>> closure(const Elem& identity, const std::vector<Elem>& generators,
                                                       Mul mul, std::size_t cap) {
  std::vector<Elem> elems{identity};
  std::map<Elem, int, Less> index{{identity, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : generators) {
      Elem e = mul(elems[head], s);
      if (index.count(e)) continue;
      if (elems.size() >= cap) throw InputError("group closure exceeds " + std::to_string(cap) + " elements");
      index.emplace(e, static_cast<int>(elems.size()));
      elems.push_back(std::move(e));
    }
  }
  const std::size_t n = elems.size();
  std::vector<int> flat(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = index.at(mul(elems[i], elems[j]));
  return {std::move(elems), std::move(flat)};
}

}  // namespace rigidtori
