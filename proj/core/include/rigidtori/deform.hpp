#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rigidtori/representation.hpp"

namespace rigidtori {

/// Lattice basis of the G-invariant alternating forms on Z^(2n).
struct InvariantTwoFormSpace {
  std::vector<RatMatrix> basis;  // integral, alternating, rho(g)^T eta rho(g) = eta
  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Averages the elementary alternating forms over G and saturates.
InvariantTwoFormSpace invariant_two_forms(const IntegralRepresentation& rho);

/// U_t = U0 + conj(U0) t in the graph chart over an orthonormal base U0.
struct PeriodPoint {
  Eigen::MatrixXcd base;  // 2n x n, orthonormal columns spanning V^{1,0}
  Eigen::MatrixXcd t;     // n x n, Hom(U0, conj U0)

  Eigen::MatrixXcd basis() const { return base + base.conjugate() * t; }
  /// Condition number of [U_t | conj U_t].
  double conditioning() const;
};

/// Orthonormalized i-eigenspace of J, t = 0.
PeriodPoint base_point(const Eigen::MatrixXd& J);

/// Invariant directions of the chart: t with conj(A_g) t = t A_g, where
/// rho(g) U0 = U0 A_g. Its complex dimension is dim Hom_G(V^{1,0}, V^{0,1}).
struct InvariantChart {
  std::vector<Eigen::MatrixXcd> directions;
  int dimension() const { return static_cast<int>(directions.size()); }
};

InvariantChart invariant_chart(const IntegralRepresentation& rho, const PeriodPoint& base);

struct KahlerClass {
  Eigen::MatrixXd omega;        // i (L^T conj L - conj L^T L), G-averaged
  Eigen::VectorXd coordinates;  // in the invariant basis
  double relation_one_residual = 0;
  double positivity_margin = 0;
};

KahlerClass invariant_kahler_class(const IntegralRepresentation& rho, const PeriodPoint& base,
                                   const InvariantTwoFormSpace& space);

/// Restriction of xi to conj(U_t) x conj(U_t): antisymmetric n x n, zero iff xi is in F^1 at t.
Eigen::MatrixXcd zero_two_part(const Eigen::MatrixXd& xi, const PeriodPoint& p);
/// Minimum eigenvalue of -i xi(v, conj w) on an orthonormal basis of U_t.
double positivity_margin(const Eigen::MatrixXd& xi, const PeriodPoint& p);
/// Rank of the linearization of the (0,2)-part in the invariant chart at p.
int linearization_rank(const Eigen::MatrixXd& xi, const PeriodPoint& p, const InvariantChart& chart);

struct DeformOptions {
  double tolerance = 1e-10;      // Newton convergence on |xi^{0,2}|
  double positivity = 1e-8;      // minimum eigenvalue of the Hermitian form
  double conditioning = 1e6;     // bound on cond [U_t | conj U_t]
  int max_iterations = 30;
  double divergence_bound = 1.0;  // |t| beyond this counts as leaving the basin
};

struct NewtonResult {
  PeriodPoint point;
  std::vector<double> residuals;  // |xi^{0,2}| before each step and at the end
};

/// Least-norm Newton on the invariant chart starting at `start`. Throws
/// "NoConvergence".
NewtonResult newton_solve(const Eigen::MatrixXd& xi, const PeriodPoint& start, const InvariantChart& chart,
                          const DeformOptions& options = {});

struct DeformationResult {
  PeriodPoint point;
  double t_norm = 0;
  RatMatrix xi;                       // exact, alternating, invariant
  std::vector<Rational> coordinates;  // in the invariant basis
  long denominator = 1;               // enumeration denominator bound that produced xi
  double residual = 0;
  double positivity_margin = 0;
  double conditioning = 0;
  int chart_dimension = 0;
  int candidates_tried = 0;
  std::vector<double> newton_residuals;
};

/// Rational invariant classes near the Kahler class, in increasing
/// denominator (coordinate-wise convergents merged by denominator bound),
/// each Newton-solved; returns the first success with |t| < epsilon.
/// Throws "BudgetExhausted" with the best candidate's diagnostics.
DeformationResult find_projective_neighbor(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                           long max_denominator, double epsilon, const DeformOptions& options = {});
/// Same enumeration, run to the end of the budget: the success with the
/// smallest |t|. A larger budget enumerates a superset, so |t| cannot grow.
DeformationResult best_projective_neighbor(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                           long max_denominator, const DeformOptions& options = {});

}  // namespace rigidtori
