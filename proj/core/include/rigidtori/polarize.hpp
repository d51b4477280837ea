#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rigidtori/hodge.hpp"
#include "rigidtori/number_field.hpp"

namespace rigidtori {

/// zeta in a CM character field with conj(zeta) = -zeta and certified signs
/// of Im sigma(zeta) on every embedding (+1 on the V^{1,0} side).
struct ImaginaryElement {
  SubfieldSpec field;
  CyclotomicNumber zeta;
  std::map<int, int> signs;
};

/// Q-basis of {x in F : conj(x) = -x}. Throws "RealEmbeddingPresent" for a
/// totally real F.
std::vector<CyclotomicNumber> imaginary_subspace(const SubfieldSpec& F);

/// zeta with Im sigma_a(zeta) > 0 for a in S. S must hold exactly one
/// embedding from every conjugate pair. Throws "NotCMField" for totally real F.
ImaginaryElement find_zeta(const SubfieldSpec& F, const std::vector<int>& S);

/// E(x, y) = Tr_{F/Q}(zeta x conj(y)) on the given elements.
RatMatrix trace_form(const SubfieldSpec& F, const CyclotomicNumber& zeta, const std::vector<CyclotomicNumber>& basis);

struct PolarizationOptions {
  bool g_invariant = false;
  /// Shuffles the greedy F-basis search; nullopt keeps index order.
  std::optional<std::uint64_t> basis_seed;
  double relation_one_tolerance = 1e-8;  // numeric route
  double min_eigenvalue = 1e-6;          // numeric route
};

struct PolarizationCertificate {
  /// "exact" (symbolic Hodge data) or "numeric" (a given J)
  std::string method;
  bool relation_one = false;
  double relation_one_residual = 0;  // 0 on the exact route
  bool relation_two = false;
  /// exact route: "E(x, Jy) = L D L^T with every pivot certified positive";
  /// numeric route: the certified lower bound on the minimum eigenvalue
  std::string relation_two_statement;
  double min_eigenvalue_lower_bound = 0;
  bool rosati = false;
  bool g_invariant = false;
  bool passed() const { return relation_one && relation_two && rosati; }
};

struct PolarizationSummand {
  int orbit = 0;
  int copy = 0;
  std::string field;
  std::vector<Rational> zeta;  // coordinates in the field basis
  std::map<int, int> signs;
  std::vector<int> columns;  // columns of the F-basis matrix built from this copy
};

struct PolarizationForm {
  int rank = 0;
  IntMatrix E;  // alternating, integral, primitive
  std::vector<PolarizationSummand> summands;
  PolarizationCertificate certificate;
};

/// Trace forms on F-module copies of every isotypic piece, pulled back to the
/// lattice and made primitive integral (G-averaged first if requested).
/// Throws "NotRigid" with the offending embeddings as witness.
PolarizationForm assemble_polarization(const IntegralRepresentation& rho, const CharacterTable& table,
                                       const GaloisOrbitDecomposition& orbits, const SymbolicHodgeSpec& spec,
                                       const PolarizationOptions& options = {});
/// Numeric Hodge data: the character of V^{1,0} is read off J first; both the
/// exact and the numeric certificate must pass (the numeric one is returned).
PolarizationForm assemble_polarization(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                       const CharacterTable& table, const GaloisOrbitDecomposition& orbits,
                                       const PolarizationOptions& options = {});

/// Exact verification against a rigid Hodge type: relation I as
/// P^T E P = 0 for the projector P onto V^{1,0}, relation II by an exact
/// LDL^T of E J with certified pivot signs, Rosati on the class sums.
/// Throws "RelationIFails", "NotPositiveDefinite", "RosatiFails" with witnesses
/// and InputError if E is not alternating.
PolarizationCertificate verify_polarization(const RatMatrix& E, const IntegralRepresentation& rho,
                                            const CharacterTable& table, const GaloisOrbitDecomposition& orbits,
                                            const SymbolicHodgeSpec& spec);
/// Numeric verification for a given complex structure: |J^T E J - E| within
/// tolerance, and E J symmetrized minus s I shown positive definite exactly
/// (s = options.min_eigenvalue). Rosati is still exact.
PolarizationCertificate verify_polarization(const RatMatrix& E, const IntegralRepresentation& rho,
                                            const Eigen::MatrixXd& J, const CharacterTable& table,
                                            const PolarizationOptions& options = {});

/// Certificate of polarization existence for a CM-type sign pattern.
struct ExistenceCertificate {
  bool exists = false;
  std::string field;
  /// power-basis (or field-basis) coordinates of zeta when it exists
  std::vector<Rational> witness;
  std::map<int, int> signs;
  /// When infeasible: the structural reason and the embedding pair whose
  /// required signs cannot both hold.
  nlohmann::json obstruction;
};

/// Decision for a field given by a monic irreducible integer polynomial with
/// no real roots. S: root indices (PolynomialField order), one per conjugate pair.
/// Throws "NotTotallyImaginary", "ReduciblePolynomial", and "Undecided" when
/// F is not CM but neither primitive nor quadratic (outside the implemented certificates).
ExistenceCertificate polarization_exists(const QPoly& f, const std::vector<int>& S);
/// Same decision for a character field (an abelian field: CM or totally real).
ExistenceCertificate polarization_exists(const SubfieldSpec& F, const std::vector<int>& S);

/// Root indices with positive imaginary part: a CM type for any polynomial field without real roots.
std::vector<int> upper_half_plane_type(const PolynomialField& F);

/// Minimal polynomial of a generator of F (monic, integral), degree = [F : Q].
QPoly defining_polynomial(const SubfieldSpec& F);

}  // namespace rigidtori
