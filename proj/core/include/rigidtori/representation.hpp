#pragma once

#include <string>
#include <vector>

#include "rigidtori/character.hpp"
#include "rigidtori/group.hpp"
#include "rigidtori/lattice.hpp"

namespace rigidtori {

using CycMatrix = Matrix<CyclotomicNumber>;

/// A finite group acting on Z^(2n) by integer matrices, one per element.
class IntegralRepresentation {
 public:
  /// Closes the generators under multiplication (cap 10000 elements). The
  /// group's element order is the discovery order, identity first.
  static IntegralRepresentation from_generators(const std::vector<IntMatrix>& generators, std::string name = "");
  /// Checks that `matrices` (indexed by group element) form a homomorphism
  /// with unimodular images. Throws InputError.
  static IntegralRepresentation from_group(FiniteGroup group, std::vector<IntMatrix> matrices);

  const FiniteGroup& group() const { return group_; }
  int rank() const { return rank_; }
  const IntMatrix& matrix(int g) const { return mats_[g]; }
  const RatMatrix& rational(int g) const { return rats_[g]; }
  /// Trace of rho(g).
  long trace(int g) const;
  /// rho applied to a group-algebra element.
  RatMatrix apply(const GroupAlgebraElement<Rational>& a) const;
  CycMatrix apply(const GroupAlgebraElement<CyclotomicNumber>& a, const FieldPtr& field) const;

  /// Block-diagonal sum over the same group.
  static IntegralRepresentation direct_sum(const IntegralRepresentation& a, const IntegralRepresentation& b);

 private:
  IntegralRepresentation(FiniteGroup g, std::vector<IntMatrix> mats);
  FiniteGroup group_;
  int rank_ = 0;
  std::vector<IntMatrix> mats_;
  std::vector<RatMatrix> rats_;
};

CycMatrix to_cyclotomic(const RatMatrix& m, const FieldPtr& field);

/// Regular representation: rho(g) e_h = e_{gh}.
IntegralRepresentation regular_representation(const FiniteGroup& g);

/// The action on the saturated lattice (image of rho(e)) ∩ Z^N for a rational
/// central idempotent e. Returns the lattice basis (columns) alongside.
std::pair<IntegralRepresentation, IntMatrix> restrict_to_image(const IntegralRepresentation& rho,
                                                               const GroupAlgebraElement<Rational>& e);

}  // namespace rigidtori
