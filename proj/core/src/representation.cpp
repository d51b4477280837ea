#include "rigidtori/representation.hpp"

#include <algorithm>

#include "rigidtori/errors.hpp"

namespace rigidtori {

namespace {

struct IntMatrixLess {
  bool operator()(const IntMatrix& a, const IntMatrix& b) const {
    return std::lexicographical_compare(a.data().begin(), a.data().end(), b.data().begin(), b.data().end());
  }
};

Integer determinant(const IntMatrix& m) {
  RatMatrix r = to_rational(m);
  const std::size_t n = r.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(r(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      r.swap_rows(p, c);
      det = -det;
    }
    det *= r(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(r(i, c)) == 0) continue;
      const Rational f = r(i, c) / r(c, c);
      for (std::size_t j = c; j < n; ++j) r(i, j) -= f * r(c, j);
    }
  }
  return det.get_num();
}

}  // namespace

IntegralRepresentation::IntegralRepresentation(FiniteGroup g, std::vector<IntMatrix> mats)
    : group_(std::move(g)), rank_(mats.empty() ? 0 : static_cast<int>(mats.front().rows())), mats_(std::move(mats)) {
  for (const auto& m : mats_) rats_.push_back(to_rational(m));
}

IntegralRepresentation IntegralRepresentation::from_generators(const std::vector<IntMatrix>& generators,
                                                               std::string name) {
  if (generators.empty()) throw InputError("no generator matrices");
  const std::size_t n = generators.front().rows();
  if (n == 0) throw InputError("generator matrices are empty");
  for (const auto& m : generators) {
    if (m.rows() != n || m.cols() != n) throw InputError("generator matrices must be square of one size");
    const Integer d = determinant(m);
    if (d != 1 && d != -1) throw InputError("generator matrix is not unimodular (det " + d.get_str() + ")");
  }
  auto [elems, flat] = closure<IntMatrix, IntMatrix (*)(const IntMatrix&, const IntMatrix&), IntMatrixLess>(identity(n, Integers{}), generators,
                                          +[](const IntMatrix& a, const IntMatrix& b) -> IntMatrix { return a * b; }, 10000);
  FiniteGroup::Table table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) table[i][j] = flat[i * elems.size() + j];
  return IntegralRepresentation(FiniteGroup::from_cayley_table(std::move(table), std::move(name)), std::move(elems));
}

IntegralRepresentation IntegralRepresentation::from_group(FiniteGroup group, std::vector<IntMatrix> matrices) {
  if (static_cast<int>(matrices.size()) != group.order()) throw InputError("need one matrix per group element");
  const std::size_t n = matrices.front().rows();
  for (const auto& m : matrices)
    if (m.rows() != n || m.cols() != n) throw InputError("representation matrices must be square of one size");
  if (!(matrices[0] == identity(n, Integers{}))) throw InputError("identity element must act trivially");
  for (int g = 0; g < group.order(); ++g) {
    const Integer d = determinant(matrices[g]);
    if (d != 1 && d != -1) throw InputError("representation matrix is not unimodular");
    for (int h = 0; h < group.order(); ++h)
      if (!(matrices[g] * matrices[h] == matrices[group.mul(g, h)]))
        throw InputError("matrices do not form a homomorphism at (" + std::to_string(g) + ", " +
                         std::to_string(h) + ")");
  }
  return IntegralRepresentation(std::move(group), std::move(matrices));
}

long IntegralRepresentation::trace(int g) const {
  Integer t = 0;
  for (int i = 0; i < rank_; ++i) t += mats_[g](i, i);
  return t.get_si();
}

RatMatrix IntegralRepresentation::apply(const GroupAlgebraElement<Rational>& a) const {
  RatMatrix out(rank_, rank_, Rational(0));
  for (int g = 0; g < group_.order(); ++g)
    if (sgn(a[g]) != 0) out += rats_[g] * a[g];
  return out;
}

CycMatrix IntegralRepresentation::apply(const GroupAlgebraElement<CyclotomicNumber>& a, const FieldPtr& field) const {
  CycMatrix out(rank_, rank_, field->zero());
  for (int g = 0; g < group_.order(); ++g) {
    if (a[g].is_zero()) continue;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if (sgn(mats_[g](i, j)) != 0) out(i, j) += a[g] * Rational(mats_[g](i, j));
  }
  return out;
}

IntegralRepresentation IntegralRepresentation::direct_sum(const IntegralRepresentation& a,
                                                          const IntegralRepresentation& b) {
  if (a.group_.order() != b.group_.order()) throw std::invalid_argument("direct sum over different groups");
  const int n = a.rank_ + b.rank_;
  std::vector<IntMatrix> mats;
  for (int g = 0; g < a.group_.order(); ++g) {
    IntMatrix m(n, n, Integer(0));
    for (int i = 0; i < a.rank_; ++i)
      for (int j = 0; j < a.rank_; ++j) m(i, j) = a.mats_[g](i, j);
    for (int i = 0; i < b.rank_; ++i)
      for (int j = 0; j < b.rank_; ++j) m(a.rank_ + i, a.rank_ + j) = b.mats_[g](i, j);
    mats.push_back(std::move(m));
  }
  return IntegralRepresentation(a.group_, std::move(mats));
}

CycMatrix to_cyclotomic(const RatMatrix& m, const FieldPtr& field) {
  CycMatrix out(m.rows(), m.cols(), field->zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) out(i, j) = field->from_rational(m(i, j));
  return out;
}

IntegralRepresentation regular_representation(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<IntMatrix> mats;
  for (int x = 0; x < n; ++x) {
    IntMatrix m(n, n, Integer(0));
    for (int h = 0; h < n; ++h) m(g.mul(x, h), h) = 1;
    mats.push_back(std::move(m));
  }
  return IntegralRepresentation::from_group(g, std::move(mats));
}

std::pair<IntegralRepresentation, IntMatrix> restrict_to_image(const IntegralRepresentation& rho,
                                                               const GroupAlgebraElement<Rational>& e) {
  const RatMatrix p = rho.apply(e);
  const RatMatrix cols = column_basis(p, Rationals{});
  if (cols.cols() == 0) throw std::invalid_argument("restrict_to_image: idempotent acts as zero");
  IntMatrix gens(cols.rows(), cols.cols(), Integer(0));
  for (std::size_t c = 0; c < cols.cols(); ++c) {
    auto v = primitive_vector(cols.column(c));
    for (std::size_t r = 0; r < cols.rows(); ++r) gens(r, c) = v[r];
  }
  const IntMatrix lattice = saturate(gens);
  const RatMatrix lq = to_rational(lattice);
  std::vector<IntMatrix> mats;
  for (int g = 0; g < rho.group().order(); ++g) {
    auto x = solve(lq, rho.rational(g) * lq, Rationals{});
    if (!x) throw std::logic_error("restrict_to_image: image is not invariant");
    mats.push_back(to_integer(*x));
  }
  return {IntegralRepresentation::from_group(rho.group(), std::move(mats)), lattice};
}

}  // namespace rigidtori
