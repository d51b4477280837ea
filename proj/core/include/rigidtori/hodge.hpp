#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidtori/character.hpp"
#include "rigidtori/representation.hpp"

namespace rigidtori {

/// Character of V^{1,0}, one value per conjugacy class in table order.
struct HodgeCharacter {
  FieldPtr field;
  std::vector<CyclotomicNumber> values;
  /// Largest distance between the numeric values and the rounded exact ones
  /// (0 for characters built symbolically).
  double rounding_residual = 0;
};

struct NumericTolerances {
  double complex_structure = 1e-10;  // |J^2 + I| and |J rho - rho J|
  double rounding = 1e-6;            // residual allowed when rounding to Z[zeta]
};

/// Checks J^2 = -I and J rho(g) = rho(g) J within tolerance (Frobenius norm).
/// Throws Error "InvalidComplexStructure".
void validate_complex_structure(const IntegralRepresentation& rho, const Eigen::MatrixXd& J, double tolerance);

/// chi10(g) = (tr rho(g) - i tr(rho(g) J)) / 2, rounded to Z[zeta_e] by solving
/// the embedding system over all Galois conjugates. Throws "RoundingFailure".
HodgeCharacter hodge_character_from_numeric(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                            const CharacterTable& table, const NumericTolerances& tol = {});

/// Multiplicity of each irreducible character in chi10; throws
/// "InconsistentCharacter" unless all are nonnegative integers.
std::vector<long> hodge_multiplicities(const HodgeCharacter& chi10, const CharacterTable& table);

/// Module over the centre with a Hodge type: for each field F_j of the centre
/// decomposition, n_j = dim V_sigma and tau(sigma) = dim V^{1,0}_sigma for
/// every embedding sigma (keyed by its residue).
struct SymbolicHodgeSpec {
  std::vector<SubfieldSpec> fields;
  std::vector<int> multiplicities;
  std::vector<std::map<int, int>> tau;

  /// Sum of tau over all embeddings of all fields: dim V^{1,0}.
  int total() const;
};

/// Checks (HS) and, when given, that total() equals n. Throws "HSViolation".
void validate_hodge_symmetry(const SymbolicHodgeSpec& spec, std::optional<int> n = std::nullopt);

SymbolicHodgeSpec symbolic_spec_from_character(const HodgeCharacter& chi10, const CharacterTable& table,
                                               const GaloisOrbitDecomposition& orbits);
/// Inverse of the above: chi10 = sum_j sum_sigma tau(sigma)/chi(1) * sigma(chi_rep).
HodgeCharacter hodge_character_from_symbolic(const SymbolicHodgeSpec& spec, const CharacterTable& table,
                                             const GaloisOrbitDecomposition& orbits);

struct EmbeddingRow {
  int field = 0;
  std::string field_name;
  int embedding = 0;
  int conjugate = 0;
  int tau = 0;
  int tau_conjugate = 0;
  long product = 0;
};

struct MethodResult {
  std::string method;  // "character", "centre", "brute_force"
  long hom_dimension = 0;
  bool rigid = false;
};

struct RigidityReport {
  /// dim Hom_G(V^{0,1}, V^{1,0}) (also dim H^1(T, Theta_T)^G).
  long hom_dimension = 0;
  bool is_rigid = false;
  std::vector<EmbeddingRow> embeddings;  // embeddings of active fields
  std::vector<EmbeddingRow> violations;  // conjugate pairs with tau tau-bar > 0, listed once
  std::vector<MethodResult> methods;
  bool verdicts_agree = true;
  /// character and brute-force dimensions coincide (true if only one ran)
  bool dimensions_agree = true;
};

RigidityReport rigidity_by_character(const HodgeCharacter& chi10, const CharacterTable& table);
/// Rigid iff tau(j) tau(j-bar) = 0 on every active field. The method's
/// dimension is dim Hom over the centre, sum_sigma tau(sigma) tau(sigma-bar).
RigidityReport rigidity_by_centre(const SymbolicHodgeSpec& spec);
/// Builds modules isomorphic to V^{1,0} and V^{0,1} inside V (x) Q(zeta_e) and
/// solves the equivariance equations exactly. Rank cap 64.
long brute_force_hom_dimension(const IntegralRepresentation& rho, const HodgeCharacter& chi10,
                               const CharacterTable& table);
/// All three methods with agreement flags.
RigidityReport analyze_rigidity(const IntegralRepresentation& rho, const HodgeCharacter& chi10,
                                const CharacterTable& table, const GaloisOrbitDecomposition& orbits,
                                bool run_brute_force = true);

struct IsotypicPiece {
  int orbit = 0;
  RatMatrix projector;  // rho(e_K)
  RatMatrix basis;      // columns spanning the image (possibly none)
};

std::vector<IsotypicPiece> isotypic_split(const IntegralRepresentation& rho, const GaloisOrbitDecomposition& orbits);

/// T_k = rho(z_k) P_j where z_k in Z(Q[G]) e_K maps to the k-th basis element
/// of F_j: multiplication by that element on V_j, zero on the other pieces.
std::vector<RatMatrix> centre_action(const IntegralRepresentation& rho, const CharacterTable& table,
                                     const GaloisOrbitDecomposition& orbits, int orbit);

/// Vectors v_1..v_r whose F_j-orbits {T_k v_i} form a Q-basis of the piece.
/// Greedy over the piece's basis columns, visited in `order` if given.
std::vector<std::vector<Rational>> f_module_basis(const IsotypicPiece& piece, const std::vector<RatMatrix>& action,
                                                  const std::vector<int>& order = {});

/// Every rigid Hodge type on the module with the given multiplicities:
/// each active CM field picks one side of every conjugate pair, tau in {0, n_j}.
/// Empty if an active field is totally real.
std::vector<SymbolicHodgeSpec> enumerate_rigid_types(const std::vector<SubfieldSpec>& fields,
                                                     const std::vector<int>& multiplicities);
/// prod over active CM fields of 2^(deg/2); 0 if an active field is totally real.
Integer rigid_type_count(const std::vector<SubfieldSpec>& fields, const std::vector<int>& multiplicities);

}  // namespace rigidtori
