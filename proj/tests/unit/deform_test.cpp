#include <cmath>
#include <complex>
#include <functional>

#include "doctest.h"
#include "rigidtori/deform.hpp"
#include "rigidtori/errors.hpp"
#include "rigidtori/fixtures.hpp"
#include "rigidtori/polarize.hpp"

using namespace rigidtori;

namespace {

Eigen::MatrixXd to_double(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

/// Rounds every entry of a real matrix to the nearest multiple of 1/den.
RatMatrix round_to(const Eigen::MatrixXd& m, long den) {
  RatMatrix out(m.rows(), m.cols(), Rational(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = ratio(std::lround(m(i, j) * den), den);
  return out;
}

/// dim of the invariant alternating forms by the character of Lambda^2.
long lambda2_invariants(const IntegralRepresentation& rho) {
  const FiniteGroup& g = rho.group();
  long sum = 0;
  for (int x = 0; x < g.order(); ++x) {
    const long t = rho.trace(x);
    sum += t * t - rho.trace(g.mul(x, x));
  }
  REQUIRE(sum % (2 * g.order()) == 0);
  return sum / (2 * g.order());
}

IntegralRepresentation trivial_rep(int rank) {
  return IntegralRepresentation::from_generators({identity(rank, Integers{})}, "trivial");
}

Eigen::MatrixXd standard_j(int rank) {
  const int n = rank / 2;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rank, rank);
  J.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return J;
}

std::string error_name(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.name();
  }
  return "";
}

}  // namespace

TEST_CASE("invariant alternating forms") {
  CHECK(invariant_two_forms(trivial_rep(4)).dimension() == 6);
  CHECK(invariant_two_forms(trivial_rep(6)).dimension() == 15);

  const Fixture g = gaussian_fixture();
  const auto z4 = invariant_two_forms(g.rho);
  REQUIRE(z4.dimension() == 1);
  const RatMatrix expected = [] {
    RatMatrix m(2, 2, Rational(0));
    m(0, 1) = 1;
    m(1, 0) = -1;
    return m;
  }();
  CHECK((z4.basis[0] == expected || z4.basis[0] == expected * Rational(-1)));

  for (const auto& f : random_fixtures(25, 11)) {
    CAPTURE(f.name);
    const auto space = invariant_two_forms(f.rho);
    CHECK(space.dimension() == lambda2_invariants(f.rho));
    for (const auto& eta : space.basis) {
      CHECK(eta.transpose() == eta * Rational(-1));
      for (int x = 0; x < f.rho.group().order(); ++x)
        CHECK(f.rho.rational(x).transpose() * eta * f.rho.rational(x) == eta);
    }
  }
}

TEST_CASE("Kahler class of the standard structure") {
  const auto rho = trivial_rep(2);
  const PeriodPoint p = base_point(standard_j(2));
  const KahlerClass k = invariant_kahler_class(rho, p, invariant_two_forms(rho));
  CHECK(std::abs(k.omega(0, 0)) < 1e-14);
  CHECK(std::abs(k.omega(0, 1) + k.omega(1, 0)) < 1e-14);
  CHECK(k.omega(0, 1) > 0);
  CHECK(k.positivity_margin > 0);
  CHECK(k.relation_one_residual < 1e-12);

  for (const auto& f : random_fixtures(20, 13)) {
    CAPTURE(f.name);
    const PeriodPoint q = base_point(f.J);
    const KahlerClass kc = invariant_kahler_class(f.rho, q, invariant_two_forms(f.rho));
    CHECK(kc.positivity_margin > 1e-6);
    CHECK(zero_two_part(kc.omega, q).norm() < 1e-10);
    for (int x = 0; x < f.rho.group().order(); ++x) {
      const Eigen::MatrixXd r = to_double(f.rho.rational(x));
      CHECK((r.transpose() * kc.omega * r - kc.omega).norm() < 1e-10);
    }
  }
}

TEST_CASE("zero-two part recovers the (0,2) coefficient") {
  FixtureRng rng(21);
  const Eigen::MatrixXd J = random_complex_structure(6, rng);
  const PeriodPoint p = base_point(J);
  const int n = 3;
  Eigen::MatrixXcd W(6, 6);
  W << p.base, p.base.conjugate();
  const Eigen::MatrixXcd L = W.inverse().topRows(n);
  Eigen::MatrixXcd A(n, n);
  A << 0, std::complex<double>(1, 2), std::complex<double>(-0.5, 0.25), std::complex<double>(-1, -2), 0,
      std::complex<double>(3, -1), std::complex<double>(0.5, -0.25), std::complex<double>(-3, 1), 0;
  const Eigen::MatrixXd xi = (L.transpose() * A * L).real() * 2.0;
  CHECK((zero_two_part(xi, p) - A.conjugate()).norm() < 1e-10);
}

TEST_CASE("Newton on the invariant chart") {
  FixtureRng rng(8);
  const Fixture f = trivial_fixture(4, rng);
  const PeriodPoint p = base_point(f.J);
  const InvariantChart chart = invariant_chart(f.rho, p);
  CHECK(chart.dimension() == 4);

  const KahlerClass k = invariant_kahler_class(f.rho, p, invariant_two_forms(f.rho));
  CHECK(linearization_rank(k.omega, p, chart) == 1);
  const NewtonResult at_omega = newton_solve(k.omega, p, chart);
  CHECK(at_omega.point.t.norm() < 1e-12);

  // an exact class near omega, denominator 64
  const Eigen::MatrixXd xi = to_double(round_to(k.omega / k.omega.cwiseAbs().maxCoeff(), 64));
  const NewtonResult r = newton_solve(xi, p, chart);
  const auto& res = r.residuals;
  REQUIRE(res.size() >= 2);
  CHECK(res.size() <= 21);
  CHECK(res.back() < 1e-10);
  CHECK(zero_two_part(xi, r.point).norm() < 1e-10);
  // quadratic convergence once in the basin: r_{k+1} <= C r_k^2
  for (std::size_t i = 1; i + 1 < res.size(); ++i)
    if (res[i] < 1e-2 && res[i + 1] > 1e-14) CHECK(res[i + 1] <= 50.0 * res[i] * res[i]);

  const Fixture g = gaussian_fixture();
  const PeriodPoint pg = base_point(g.J);
  CHECK(invariant_chart(g.rho, pg).dimension() == 0);
}

TEST_CASE("chart dimension equals the G-Hom dimension") {
  for (const auto& f : random_fixtures(40, 17)) {
    CAPTURE(f.name);
    const auto chi10 = hodge_character_from_numeric(f.rho, f.J, *f.table);
    const long expected = rigidity_by_character(chi10, *f.table).hom_dimension;
    CHECK(invariant_chart(f.rho, base_point(f.J)).dimension() == expected);
  }
}

TEST_CASE("linearization rank on trivial tori") {
  FixtureRng rng(31);
  for (int rank : {4, 6, 8}) {
    const Fixture f = trivial_fixture(rank, rng);
    const PeriodPoint p = base_point(f.J);
    const KahlerClass k = invariant_kahler_class(f.rho, p, invariant_two_forms(f.rho));
    const int n = rank / 2;
    CHECK(linearization_rank(k.omega, p, invariant_chart(f.rho, p)) == n * (n - 1) / 2);
  }
}

TEST_CASE("projective neighbours") {
  // rational complex structure: already projective
  const DeformationResult std4 = find_projective_neighbor(trivial_rep(4), standard_j(4), 16, 1e-2);
  CHECK(std4.t_norm < 1e-12);
  CHECK(std4.denominator == 1);

  const Fixture g = gaussian_fixture();
  const DeformationResult z4 = find_projective_neighbor(g.rho, g.J, 16, 1e-2);
  CHECK(z4.chart_dimension == 0);
  CHECK(z4.t_norm == 0);
  const CharacterTable t = character_table(g.rho.group());
  const auto orbits = galois_orbits(t);
  const auto spec = symbolic_spec_from_character(hodge_character_from_numeric(g.rho, g.J, t), t, orbits);
  CHECK(verify_polarization(z4.xi, g.rho, t, orbits, spec).passed());

  FixtureRng rng(44);
  for (int i = 0; i < 3; ++i) {
    const Fixture f = trivial_fixture(4, rng);
    double last = 1e300;
    for (long d : {16L, 64L, 256L}) {
      const DeformationResult b = best_projective_neighbor(f.rho, f.J, d);
      CHECK(b.t_norm <= last);
      CHECK(b.residual < 1e-10);
      CHECK(b.positivity_margin > 1e-8);
      last = b.t_norm;
    }
    const DeformationResult first = find_projective_neighbor(f.rho, f.J, 256, 1e-2);
    CHECK(first.t_norm < 1e-2);
    const DeformationResult again = find_projective_neighbor(f.rho, f.J, 256, 1e-2);
    CHECK(again.xi == first.xi);
    CHECK(again.t_norm == first.t_norm);
    // first success is minimal: below its denominator the budget is exhausted
    if (first.denominator > 1)
      CHECK(error_name([&] { find_projective_neighbor(f.rho, f.J, first.denominator - 1, 1e-2); }) ==
            "BudgetExhausted");
  }
}
