#pragma once

#include <vector>

#include "rigidtori/cyclotomic.hpp"
#include "rigidtori/group.hpp"
#include "rigidtori/subfield.hpp"

namespace rigidtori {

struct ConjugacyClasses {
  int count = 0;
  std::vector<int> class_of;              // element -> class
  std::vector<std::vector<int>> members;  // ascending; classes ordered by smallest member
  std::vector<int> sizes;
  std::vector<int> reps;                  // smallest member
  std::vector<int> rep_orders;
  std::vector<int> inverse_class;         // class of g^-1
  /// a_{ijk}: number of (x, y) in C_i x C_j with x y = reps[k].
  std::vector<long> coefficients;

  long coefficient(int i, int j, int k) const {
    return coefficients[(static_cast<std::size_t>(i) * count + j) * count + k];
  }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

/// Exact irreducible characters with values in Q(zeta_e), e = exponent(G).
/// Rows: ascending degree, trivial character first, then lexicographic on
/// the value coefficient vectors in class order.
class CharacterTable {
 public:
  const FiniteGroup& group() const { return group_; }
  const ConjugacyClasses& classes() const { return classes_; }
  const FieldPtr& field() const { return field_; }
  int size() const { return static_cast<int>(values_.size()); }
  const CyclotomicNumber& value(int chi, int cls) const { return values_[chi][cls]; }
  const std::vector<CyclotomicNumber>& row(int chi) const { return values_[chi]; }
  const CyclotomicNumber& at_element(int chi, int g) const { return values_[chi][classes_.class_of[g]]; }
  int degree(int chi) const { return degrees_[chi]; }
  /// Row index of the character sigma_a(chi).
  int galois_image(int chi, long a) const;
  /// Row index of the complex-conjugate character.
  int conjugate(int chi) const { return galois_image(chi, -1); }
  /// Central character omega_chi(C) = |C| chi(g_C) / chi(1).
  CyclotomicNumber central_character(int chi, int cls) const;
  /// <f, chi> = (1/|G|) sum_g f(g) conj(chi(g)) for a class function given on classes.
  CyclotomicNumber inner_product(const std::vector<CyclotomicNumber>& f, int chi) const;

 private:
  friend CharacterTable character_table(const FiniteGroup& g);
  CharacterTable(FiniteGroup g, ConjugacyClasses c, FieldPtr f)
      : group_(std::move(g)), classes_(std::move(c)), field_(std::move(f)) {}
  FiniteGroup group_;
  ConjugacyClasses classes_;
  FieldPtr field_;
  std::vector<std::vector<CyclotomicNumber>> values_;
  std::vector<int> degrees_;
};

/// Burnside's class-algebra method, done exactly: the central characters are
/// the common eigenvectors of the class multiplication matrices.
CharacterTable character_table(const FiniteGroup& g);

/// Group-algebra element: one coefficient per group element.
template <class T>
using GroupAlgebraElement = std::vector<T>;

/// e_chi = chi(1)/|G| sum_g chi(g^-1) g.
GroupAlgebraElement<CyclotomicNumber> central_idempotent(const CharacterTable& t, int chi);

template <class T>
GroupAlgebraElement<T> group_algebra_multiply(const FiniteGroup& g, const GroupAlgebraElement<T>& a,
                                              const GroupAlgebraElement<T>& b) {
  GroupAlgebraElement<T> out(a.size(), a.front() - a.front());
  for (int x = 0; x < g.order(); ++x) {
    if (is_zero(a[x])) continue;
    for (int y = 0; y < g.order(); ++y)
      if (!is_zero(b[y])) out[g.mul(x, y)] += a[x] * b[y];
  }
  return out;
}

struct GaloisOrbit {
  std::vector<int> members;  // row indices, ascending
  int representative = 0;    // members.front()
  SubfieldSpec field;        // F_[chi], generated by the values of the representative
  FieldKind kind = FieldKind::TotallyReal;
  /// e_K(chi) = sum of e_chi over the orbit; rational.
  GroupAlgebraElement<Rational> idempotent;
  /// Residue a for each member: members[i] = sigma_{residues[i]}(representative),
  /// residues[i] the smallest such embedding of the field.
  std::vector<int> residues;
};

struct GaloisOrbitDecomposition {
  std::vector<GaloisOrbit> orbits;
  /// orbit index of each character
  std::vector<int> orbit_of;
};

GaloisOrbitDecomposition galois_orbits(const CharacterTable& t);

/// Z(Q[G]) = F_1 + ... + F_l: for each orbit j, the F_j-component of every
/// class sum v_C, i.e. omega_{chi_rep}(v_C), in SubfieldSpec coordinates.
struct CentreComponent {
  int orbit = 0;
  SubfieldSpec field;
  std::vector<std::vector<Rational>> class_sum_coordinates;  // per class
};

std::vector<CentreComponent> centre_decomposition(const CharacterTable& t, const GaloisOrbitDecomposition& orbits);

}  // namespace rigidtori
