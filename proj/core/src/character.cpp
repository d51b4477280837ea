#include "rigidtori/character.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rigidtori/matrix.hpp"

namespace rigidtori {

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  ConjugacyClasses c;
  c.class_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (c.class_of[x] != -1) continue;
    std::set<int> orbit;
    for (int y = 0; y < n; ++y) orbit.insert(g.mul(g.mul(y, x), g.inverse(y)));
    for (int z : orbit) c.class_of[z] = c.count;
    c.members.emplace_back(orbit.begin(), orbit.end());
    c.sizes.push_back(static_cast<int>(orbit.size()));
    c.reps.push_back(x);
    c.rep_orders.push_back(g.element_order(x));
    ++c.count;
  }
  const int d = c.count;
  for (int i = 0; i < d; ++i) c.inverse_class.push_back(c.class_of[g.inverse(c.reps[i])]);
  c.coefficients.assign(static_cast<std::size_t>(d) * d * d, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int x : c.members[i])
        for (int y : c.members[j]) {
          const int z = g.mul(x, y);
          const int k = c.class_of[z];
          if (c.reps[k] == z) ++c.coefficients[(static_cast<std::size_t>(i) * d + j) * d + k];
        }
  return c;
}

namespace {

using CMatrix = Matrix<CyclotomicNumber>;

/// Columns of b brought to reduced column-echelon form: the returned basis
/// has an identity block on the returned pivot rows.
std::pair<CMatrix, std::vector<std::size_t>> normalize_basis(const CMatrix& b, const CyclotomicField& f) {
  CMatrix t = b.transpose();
  auto pivots = rref(t, f);
  CMatrix out(b.rows(), pivots.size(), f.zero());
  for (std::size_t c = 0; c < pivots.size(); ++c)
    for (std::size_t r = 0; r < b.rows(); ++r) out(r, c) = t(c, r);
  return {out, pivots};
}

struct Candidate {
  CyclotomicNumber value;
  std::complex<double> approx;
};

/// Possible central-character values |C| chi(g)/chi(1) at a class whose
/// representative has order `ord`: chi(g) is a sum of chi(1) ord-th roots of unity.
std::vector<Candidate> candidates(const FieldPtr& f, int group_order, int class_size, int ord) {
  const int e = f->conductor();
  std::set<std::vector<Rational>> seen;
  std::vector<Candidate> out;
  for (int d = 1; d * d <= group_order; ++d) {
    if (group_order % d) continue;
    // multisets of size d from {0..ord-1}, as nondecreasing sequences
    std::vector<int> idx(d, 0);
    while (true) {
      std::vector<Rational> powers(e, Rational(0));
      for (int t : idx) powers[static_cast<std::size_t>(t) * (e / ord) % e] += 1;
      CyclotomicNumber v = f->from_powers(powers) * ratio(class_size, d);
      if (seen.insert(v.coeffs()).second) out.push_back({v, v.embed_double(1)});
      int p = d - 1;
      while (p >= 0 && idx[p] == ord - 1) --p;
      if (p < 0) break;
      ++idx[p];
      for (int q = p + 1; q < d; ++q) idx[q] = idx[p];
    }
  }
  return out;
}

Eigen::MatrixXcd to_complex(const CMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).embed_double(1);
  return out;
}

bool row_less(const std::vector<CyclotomicNumber>& a, const std::vector<CyclotomicNumber>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return true;
    if (b[k] < a[k]) return false;
  }
  return false;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& g) {
  ConjugacyClasses cls = conjugacy_classes(g);
  FieldPtr field = CyclotomicField::make(g.exponent());
  const CyclotomicField& f = *field;
  const int d = cls.count;
  const int n = g.order();

  // Common eigenvectors omega of M_i, (M_i)_{jk} = a_{ijk}: M_i omega = omega_i omega.
  std::vector<CMatrix> spaces{identity(d, f)};
  for (int i = 1; i < d; ++i) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const CMatrix& s) { return s.cols() == 1; })) break;
    CMatrix mi(d, d, f.zero());
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) mi(j, k) = f.from_rational(cls.coefficient(i, j, k));
    const auto cands = candidates(field, n, cls.sizes[i], cls.rep_orders[i]);
    std::vector<CMatrix> next;
    for (const CMatrix& space : spaces) {
      if (space.cols() == 1) {
        next.push_back(space);
        continue;
      }
      auto [basis, pivots] = normalize_basis(space, f);
      const CMatrix image = mi * basis;
      const std::size_t r = basis.cols();
      CMatrix restricted(r, r, f.zero());
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b) restricted(a, b) = image(pivots[a], b);
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_complex(restricted), false);
      std::vector<const Candidate*> matched;
      for (const auto& c : cands)
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
          const auto mu = es.eigenvalues()(k);
          if (std::abs(c.approx - mu) < 1e-6 * std::max(1.0, std::abs(mu))) {
            matched.push_back(&c);
            break;
          }
        }
      std::size_t found = 0;
      for (const Candidate* c : matched) {
        CMatrix shifted = restricted;
        for (std::size_t a = 0; a < r; ++a) shifted(a, a) -= c->value;
        CMatrix ker = nullspace(shifted, f);
        if (ker.cols() == 0) continue;
        found += ker.cols();
        next.push_back(basis * ker);
      }
      if (found != r) throw std::logic_error("character table: eigenspace splitting incomplete");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != d) throw std::logic_error("character table: splitting did not terminate");

  CharacterTable table(g, cls, field);
  for (const CMatrix& s : spaces) {
    std::vector<CyclotomicNumber> omega = s.column(0);
    const CyclotomicNumber lead_inv = omega[0].inverse();
    for (auto& w : omega) w *= lead_inv;
    // chi(1)^2 = |G| / sum_k omega_k conj(omega_k) / |C_k|
    CyclotomicNumber s2 = f.zero();
    for (int k = 0; k < d; ++k) s2 += omega[k] * omega[k].conjugate() * ratio(1, cls.sizes[k]);
    if (!s2.is_rational()) throw std::logic_error("character table: norm is not rational");
    const Rational deg2 = Rational(n) / s2.rational_value();
    if (deg2.get_den() != 1 || !mpz_perfect_square_p(deg2.get_num_mpz_t()))
      throw std::logic_error("character table: degree is not an integer");
    Integer deg;
    mpz_sqrt(deg.get_mpz_t(), deg2.get_num_mpz_t());
    std::vector<CyclotomicNumber> row;
    for (int k = 0; k < d; ++k) row.push_back(omega[k] * ratio(deg, cls.sizes[k]));
    table.values_.push_back(std::move(row));
    table.degrees_.push_back(static_cast<int>(deg.get_si()));
  }

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  auto is_trivial = [&](int r) {
    for (const auto& v : table.values_[r])
      if (v != f.one()) return false;
    return true;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (table.degrees_[a] != table.degrees_[b]) return table.degrees_[a] < table.degrees_[b];
    if (is_trivial(a) != is_trivial(b)) return is_trivial(a);
    return row_less(table.values_[a], table.values_[b]);
  });
  std::vector<std::vector<CyclotomicNumber>> values;
  std::vector<int> degrees;
  for (int r : order) {
    values.push_back(table.values_[r]);
    degrees.push_back(table.degrees_[r]);
  }
  table.values_ = std::move(values);
  table.degrees_ = std::move(degrees);

  int sum = 0;
  for (int x : table.degrees_) sum += x * x;
  if (sum != n) throw std::logic_error("character table: degrees do not account for |G|");
  return table;
}

int CharacterTable::galois_image(int chi, long a) const {
  std::vector<CyclotomicNumber> img;
  for (const auto& v : values_[chi]) img.push_back(v.galois(a));
  for (int r = 0; r < size(); ++r)
    if (values_[r] == img) return r;
  throw std::logic_error("Galois image of a character is not in the table");
}

CyclotomicNumber CharacterTable::central_character(int chi, int cls) const {
  return values_[chi][cls] * ratio(classes_.sizes[cls], degrees_[chi]);
}

CyclotomicNumber CharacterTable::inner_product(const std::vector<CyclotomicNumber>& fvals, int chi) const {
  CyclotomicNumber acc = field_->zero();
  for (int k = 0; k < classes_.count; ++k)
    acc += fvals[k] * values_[chi][k].conjugate() * Rational(classes_.sizes[k]);
  return acc * ratio(1, group_.order());
}

GroupAlgebraElement<CyclotomicNumber> central_idempotent(const CharacterTable& t, int chi) {
  const int n = t.group().order();
  GroupAlgebraElement<CyclotomicNumber> e;
  e.reserve(n);
  const Rational scale = ratio(t.degree(chi), n);
  for (int g = 0; g < n; ++g) e.push_back(t.at_element(chi, t.group().inverse(g)) * scale);
  return e;
}

GaloisOrbitDecomposition galois_orbits(const CharacterTable& t) {
  GaloisOrbitDecomposition out;
  out.orbit_of.assign(t.size(), -1);
  const FieldPtr& f = t.field();
  for (int chi = 0; chi < t.size(); ++chi) {
    if (out.orbit_of[chi] != -1) continue;
    GaloisOrbit orbit;
    orbit.representative = chi;
    orbit.field = SubfieldSpec::generated_by(f, t.row(chi));
    orbit.kind = orbit.field.kind();
    std::map<int, int> member_residue;
    for (int a : orbit.field.embeddings()) member_residue.emplace(t.galois_image(chi, a), a);
    for (auto [m, a] : member_residue) {
      orbit.members.push_back(m);
      orbit.residues.push_back(a);
      out.orbit_of[m] = static_cast<int>(out.orbits.size());
    }
    if (orbit.members.size() != orbit.field.embeddings().size())
      throw std::logic_error("Galois orbit size differs from the field degree");
    const int n = t.group().order();
    std::vector<CyclotomicNumber> sum(n, f->zero());
    for (int m : orbit.members) {
      auto e = central_idempotent(t, m);
      for (int g = 0; g < n; ++g) sum[g] += e[g];
    }
    for (const auto& v : sum) orbit.idempotent.push_back(v.rational_value());
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

std::vector<CentreComponent> centre_decomposition(const CharacterTable& t, const GaloisOrbitDecomposition& orbits) {
  std::vector<CentreComponent> out;
  for (std::size_t j = 0; j < orbits.orbits.size(); ++j) {
    const auto& o = orbits.orbits[j];
    CentreComponent c;
    c.orbit = static_cast<int>(j);
    c.field = o.field;
    for (int k = 0; k < t.classes().count; ++k)
      c.class_sum_coordinates.push_back(o.field.coordinates(t.central_character(o.representative, k)));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace rigidtori
