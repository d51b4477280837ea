#pragma once

#include <string>
#include <vector>

#include "rigidtori/cyclotomic.hpp"

namespace rigidtori {

enum class FieldKind { TotallyReal, CM };

std::string to_string(FieldKind k);

/// The fixed field Q(zeta_m)^H of a subgroup H of (Z/m)^*, carried inside its
/// ambient cyclotomic field.
class SubfieldSpec {
 public:
  SubfieldSpec() = default;
  /// H must be a subgroup of the unit group (checked).
  SubfieldSpec(FieldPtr ambient, std::vector<int> fixing);
  /// The smallest subfield containing `values`.
  static SubfieldSpec generated_by(const FieldPtr& ambient, const std::vector<CyclotomicNumber>& values);

  const FieldPtr& ambient() const { return ambient_; }
  const std::vector<int>& fixing_subgroup() const { return h_; }
  /// Q-basis: traces over H of powers of zeta, independent ones kept,
  /// each scaled to a primitive integral coefficient vector.
  const std::vector<CyclotomicNumber>& basis() const { return basis_; }
  int degree() const { return static_cast<int>(basis_.size()); }
  /// Representatives (smallest residue) of the cosets of H: the distinct
  /// embeddings of the subfield, ascending.
  const std::vector<int>& embeddings() const { return embeddings_; }
  /// Coset representative of the embedding a restricted to this field.
  int embedding_of(long a) const;
  /// Embedding composed with complex conjugation.
  int conjugate_embedding(int e) const { return embedding_of(-static_cast<long>(e)); }
  bool is_real_embedding(int e) const { return conjugate_embedding(e) == e; }
  FieldKind kind() const;
  bool contains(const CyclotomicNumber& x) const;
  /// Coordinates of x (which must lie in the field) in basis().
  std::vector<Rational> coordinates(const CyclotomicNumber& x) const;
  CyclotomicNumber element(const std::vector<Rational>& coords) const;
  /// Tr_{F/Q}.
  Rational trace(const CyclotomicNumber& x) const;
  /// "Q", "Q(i)", "Q(zeta_5)" or "Q(zeta_8)^<1,3>".
  std::string describe() const;

  friend bool operator==(const SubfieldSpec& a, const SubfieldSpec& b) {
    return a.ambient_->conductor() == b.ambient_->conductor() && a.h_ == b.h_;
  }

 private:
  FieldPtr ambient_;
  std::vector<int> h_;
  std::vector<CyclotomicNumber> basis_;
  std::vector<int> embeddings_;
  std::vector<int> coset_rep_;  // residue -> coset representative (-1 for non-units)
};

}  // namespace rigidtori
