#include "rigidtori/subfield.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rigidtori/lattice.hpp"
#include "rigidtori/matrix.hpp"

namespace rigidtori {

std::string to_string(FieldKind k) { return k == FieldKind::CM ? "CM" : "TotallyReal"; }

SubfieldSpec::SubfieldSpec(FieldPtr ambient, std::vector<int> fixing) : ambient_(std::move(ambient)) {
  const int m = ambient_->conductor();
  std::set<int> h;
  for (int a : fixing) h.insert(ambient_->normalize_unit(a));
  h.insert(ambient_->normalize_unit(1));
  for (int a : h)
    for (int b : h)
      if (!h.count(ambient_->normalize_unit(static_cast<long>(a) * b)))
        throw std::invalid_argument("fixing set is not a subgroup of the unit group");
  h_.assign(h.begin(), h.end());

  const int phi = ambient_->degree();
  RatMatrix gens(phi, phi, Rational(0));
  std::vector<CyclotomicNumber> traces;
  for (int j = 0; j < phi; ++j) {
    CyclotomicNumber t = ambient_->zero();
    for (int a : h_) t += ambient_->zeta(static_cast<long>(a) * j);
    for (int i = 0; i < phi; ++i) gens(i, j) = t.coeffs()[i];
    traces.push_back(std::move(t));
  }
  RatMatrix work = gens;
  for (auto p : rref(work, Rationals{})) {
    auto v = primitive_vector(traces[p].coeffs());
    std::vector<Rational> c(v.begin(), v.end());
    basis_.push_back(ambient_->from_coeffs(std::move(c)));
  }
  if (static_cast<std::size_t>(phi) != basis_.size() * h_.size())
    throw std::logic_error("fixed field basis has the wrong dimension");

  coset_rep_.assign(m, -1);
  for (int a : ambient_->units()) {
    if (coset_rep_[a % m] != -1) continue;
    embeddings_.push_back(a);
    for (int b : h_) coset_rep_[ambient_->normalize_unit(static_cast<long>(a) * b) % m] = a;
  }
}

SubfieldSpec SubfieldSpec::generated_by(const FieldPtr& ambient, const std::vector<CyclotomicNumber>& values) {
  std::vector<int> h;
  for (int a : ambient->units()) {
    bool fixes = true;
    for (const auto& v : values)
      if (v.galois(a) != v) {
        fixes = false;
        break;
      }
    if (fixes) h.push_back(a);
  }
  return SubfieldSpec(ambient, h);
}

int SubfieldSpec::embedding_of(long a) const {
  const int m = ambient_->conductor();
  return coset_rep_[ambient_->normalize_unit(a) % m];
}

FieldKind SubfieldSpec::kind() const {
  return std::find(h_.begin(), h_.end(), ambient_->normalize_unit(-1)) == h_.end() ? FieldKind::CM
                                                                                   : FieldKind::TotallyReal;
}

bool SubfieldSpec::contains(const CyclotomicNumber& x) const {
  for (int a : h_)
    if (x.galois(a) != x) return false;
  return true;
}

std::vector<Rational> SubfieldSpec::coordinates(const CyclotomicNumber& x) const {
  const int phi = ambient_->degree();
  RatMatrix b(phi, basis_.size(), Rational(0));
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (int i = 0; i < phi; ++i) b(i, k) = basis_[k].coeffs()[i];
  RatMatrix rhs(phi, 1, Rational(0));
  for (int i = 0; i < phi; ++i) rhs(i, 0) = x.coeffs()[i];
  auto sol = solve(b, rhs, Rationals{});
  if (!sol) throw std::domain_error("element does not lie in the subfield");
  return sol->column(0);
}

CyclotomicNumber SubfieldSpec::element(const std::vector<Rational>& coords) const {
  if (coords.size() != basis_.size()) throw std::invalid_argument("coordinate vector has wrong length");
  CyclotomicNumber x = ambient_->zero();
  for (std::size_t k = 0; k < coords.size(); ++k) x += basis_[k] * coords[k];
  return x;
}

Rational SubfieldSpec::trace(const CyclotomicNumber& x) const {
  return x.trace() / static_cast<long>(h_.size());
}

std::string SubfieldSpec::describe() const {
  const int m = ambient_->conductor();
  if (degree() == 1) return "Q";
  // Is this Q(zeta_f) for some f | m?  That happens iff H = ker((Z/m)^* -> (Z/f)^*).
  for (int f = 3; f <= m; ++f) {
    if (m % f) continue;
    std::vector<int> ker;
    for (int a : ambient_->units())
      if (a % f == 1 % f) ker.push_back(a);
    if (ker == h_) return f == 4 ? "Q(i)" : "Q(zeta_" + std::to_string(f) + ")";
  }
  std::ostringstream os;
  os << "Q(zeta_" << m << ")^<";
  for (std::size_t i = 0; i < h_.size(); ++i) os << (i ? "," : "") << h_[i];
  os << ">";
  return os.str();
}

}  // namespace rigidtori
