#include "rigidtori/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "rigidtori/errors.hpp"

namespace rigidtori {

FiniteGroup::FiniteGroup(int n, std::vector<int> flat, std::string name)
    : n_(n), name_(std::move(name)), table_(std::move(flat)), inv_(n, -1), ord_(n, 0) {
  for (int g = 0; g < n_; ++g)
    for (int h = 0; h < n_; ++h)
      if (mul(g, h) == 0) {
        inv_[g] = h;
        break;
      }
  for (int g = 0; g < n_; ++g) {
    int k = 1, x = g;
    while (x != 0) {
      x = mul(x, g);
      ++k;
    }
    ord_[g] = k;
    exponent_ = std::lcm(exponent_, k);
  }
  std::vector<int> span{0};
  for (int g = 0; g < n_ && static_cast<int>(span.size()) < n_; ++g) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    gens_.push_back(g);
    span = subgroup(gens_);
  }
}

FiniteGroup FiniteGroup::from_cayley_table(Table table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("empty Cayley table");
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InputError("Cayley table is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validated(n, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::validated(int n, std::vector<int> flat, std::string name) {
  for (int r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    for (int c = 0; c < n; ++c) {
      const int x = flat[r * n + c];
      if (x < 0 || x >= n) throw InputError("Cayley table entry out of range");
      if (seen[x]) throw InputError("Cayley table row repeats an element");
      seen[x] = true;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (int r = 0; r < n; ++r) {
      if (seen[flat[r * n + c]]) throw InputError("Cayley table column repeats an element");
      seen[flat[r * n + c]] = true;
    }
  }
  for (int g = 0; g < n; ++g)
    if (flat[g] != g || flat[g * n] != g) throw InputError("element 0 is not the identity");
  auto m = [&](int a, int b) { return flat[a * n + b]; };
  auto check = [&](int a, int b, int c) {
    if (m(m(a, b), c) != m(a, m(b, c)))
      throw InputError("Cayley table is not associative at (" + std::to_string(a) + ", " + std::to_string(b) +
                       ", " + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) check(pick(rng), pick(rng), pick(rng));
  }
  return FiniteGroup(n, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators, std::string name) {
  std::size_t k = generators.empty() ? 0 : generators.front().size();
  for (const auto& p : generators) {
    if (p.size() != k) throw InputError("permutation generators act on different point sets");
    std::vector<bool> seen(k, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= k || seen[x]) throw InputError("generator is not a permutation");
      seen[x] = true;
    }
  }
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  auto compose = [](const std::vector<int>& g, const std::vector<int>& h) {
    std::vector<int> out(h.size());
    for (std::size_t x = 0; x < h.size(); ++x) out[x] = g[h[x]];
    return out;
  };
  auto [elems, flat] = closure(id, generators, compose, 10000);
  return validated(static_cast<int>(elems.size()), std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::cyclic(int n) { return metacyclic(n, 1, 1, 0, "Z" + std::to_string(n)); }

FiniteGroup FiniteGroup::metacyclic(int n, int m, int r, int s, std::string name) {
  if (n <= 0 || m <= 0) throw InputError("metacyclic: nonpositive order");
  auto mod = [](long a, long b) { return static_cast<int>(((a % b) + b) % b); };
  std::vector<int> rpow(m + 1, 1);
  for (int j = 1; j <= m; ++j) rpow[j] = mod(static_cast<long>(rpow[j - 1]) * r, n);
  if (rpow[m] != 1 % n || mod(static_cast<long>(r) * s - s, n) != 0)
    throw InputError("metacyclic: inconsistent parameters");
  const int order = n * m;
  std::vector<int> flat(static_cast<std::size_t>(order) * order);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < m; ++l)
        for (int k = 0; k < n; ++k) {
          long a = i + static_cast<long>(k) * rpow[j];
          int x = j + l;
          if (x >= m) {
            x -= m;
            a += s;
          }
          flat[static_cast<std::size_t>(i + n * j) * order + (k + n * l)] = mod(a, n) + n * x;
        }
  return validated(order, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b, std::string name) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  // (x, y) has index x + na * y
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      flat[static_cast<std::size_t>(g) * n + h] = a.mul(g % na, h % na) + na * b.mul(g / na, h / na);
  return validated(n, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::semidirect(const FiniteGroup& n, const std::vector<int>& aut, int k, std::string name) {
  const int nn = n.order();
  if (static_cast<int>(aut.size()) != nn) throw InputError("semidirect: automorphism has wrong size");
  for (int g = 0; g < nn; ++g)
    for (int h = 0; h < nn; ++h)
      if (aut[n.mul(g, h)] != n.mul(aut[g], aut[h])) throw InputError("semidirect: map is not a homomorphism");
  // powers of aut
  std::vector<std::vector<int>> apow(k + 1, std::vector<int>(nn));
  std::iota(apow[0].begin(), apow[0].end(), 0);
  for (int j = 1; j <= k; ++j)
    for (int g = 0; g < nn; ++g) apow[j][g] = aut[apow[j - 1][g]];
  if (apow[k] != apow[0]) throw InputError("semidirect: automorphism order does not divide k");
  const int order = nn * k;
  std::vector<int> flat(static_cast<std::size_t>(order) * order);
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h) {
      const int n1 = g % nn, j1 = g / nn, n2 = h % nn, j2 = h / nn;
      flat[static_cast<std::size_t>(g) * order + h] = n.mul(n1, apow[j1][n2]) + nn * ((j1 + j2) % k);
    }
  return validated(order, std::move(flat), std::move(name));
}

FiniteGroup FiniteGroup::quotient(const FiniteGroup& g, const std::vector<int>& normal_generators, std::string name) {
  const std::vector<int> sub = g.subgroup(normal_generators);
  std::set<int> subset(sub.begin(), sub.end());
  for (int x = 0; x < g.order(); ++x)
    for (int h : sub)
      if (!subset.count(g.mul(g.mul(x, h), g.inverse(x)))) throw InputError("quotient: subgroup is not normal");
  std::vector<int> coset(g.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (coset[x] != -1) continue;
    const int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int h : sub) coset[g.mul(x, h)] = id;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<int> flat(static_cast<std::size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) flat[static_cast<std::size_t>(a) * q + b] = coset[g.mul(reps[a], reps[b])];
  return validated(q, std::move(flat), std::move(name));
}

int FiniteGroup::power(int g, long k) const {
  k %= ord_[g];
  if (k < 0) k += ord_[g];
  int x = 0;
  for (long i = 0; i < k; ++i) x = mul(x, g);
  return x;
}

bool FiniteGroup::is_abelian() const {
  for (int g = 0; g < n_; ++g)
    for (int h = g + 1; h < n_; ++h)
      if (mul(g, h) != mul(h, g)) return false;
  return true;
}

std::vector<int> FiniteGroup::subgroup(const std::vector<int>& gens) const {
  std::vector<bool> in(n_, false);
  std::vector<int> queue{0};
  in[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int s : gens) {
      const int x = mul(queue[head], s);
      if (!in[x]) {
        in[x] = true;
        queue.push_back(x);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

FiniteGroup::Table FiniteGroup::table() const {
  Table t(n_, std::vector<int>(n_));
  for (int g = 0; g < n_; ++g)
    for (int h = 0; h < n_; ++h) t[g][h] = mul(g, h);
  return t;
}

}  // namespace rigidtori
