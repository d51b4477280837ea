#include "rigidtori/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "rigidtori/errors.hpp"
#include "rigidtori/hodge.hpp"

namespace rigidtori {

namespace {

Eigen::MatrixXd to_eigen(const RatMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

// Orthonormal basis of the column space of m, `dim` columns.
Eigen::MatrixXcd orthonormal_columns(const Eigen::MatrixXcd& m, int dim) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  return q.leftCols(dim);
}

// holomorphic version of the (0,2)-part: U_t^T xi U_t = conj of zero_two_part
Eigen::MatrixXcd holomorphic_part(const Eigen::MatrixXd& xi, const Eigen::MatrixXcd& u) {
  return u.transpose() * xi.cast<std::complex<double>>() * u;
}

Eigen::VectorXcd upper_entries(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXcd v(n * (n - 1) / 2);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(k++) = a(i, j);
  return v;
}

Eigen::MatrixXcd jacobian(const Eigen::MatrixXd& xi, const PeriodPoint& p, const InvariantChart& chart) {
  const int n = static_cast<int>(p.base.cols());
  const Eigen::MatrixXcd x = xi.cast<std::complex<double>>();
  const Eigen::MatrixXcd u = p.basis();
  // d(U_t^T xi U_t)[d] = a - a^T with a = d^T conj(U0)^T xi U_t
  const Eigen::MatrixXcd right = p.base.conjugate().transpose() * x * u;
  Eigen::MatrixXcd jac(n * (n - 1) / 2, chart.dimension());
  for (int k = 0; k < chart.dimension(); ++k) {
    const Eigen::MatrixXcd& d = chart.directions[k];
    const Eigen::MatrixXcd a = d.transpose() * right;
    jac.col(k) = upper_entries(a - a.transpose());
  }
  return jac;
}

}  // namespace

InvariantTwoFormSpace invariant_two_forms(const IntegralRepresentation& rho) {
  const int N = rho.rank();
  const int order = rho.group().order();
  const int pairs = N * (N - 1) / 2;
  // Average of e_i ^ e_j: (rho^T eta rho)_{ab} = r_ia r_jb - r_ja r_ib.
  IntMatrix gens(pairs, pairs, Integer(0));
  int col = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j, ++col) {
      for (int g = 0; g < order; ++g) {
        const IntMatrix& r = rho.matrix(g);
        int row = 0;
        for (int a = 0; a < N; ++a)
          for (int b = a + 1; b < N; ++b, ++row) gens(row, col) += r(i, a) * r(j, b) - r(j, a) * r(i, b);
      }
    }
  InvariantTwoFormSpace out;
  if (pairs == 0 || is_zero_matrix(gens)) return out;
  const IntMatrix basis = saturate(gens);
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    RatMatrix eta(N, N, Rational(0));
    int row = 0;
    for (int a = 0; a < N; ++a)
      for (int b = a + 1; b < N; ++b, ++row) {
        eta(a, b) = basis(row, c);
        eta(b, a) = -basis(row, c);
      }
    out.basis.push_back(std::move(eta));
  }
  return out;
}

double PeriodPoint::conditioning() const {
  const Eigen::MatrixXcd u = basis();
  Eigen::MatrixXcd w(u.rows(), 2 * u.cols());
  w << u, u.conjugate();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1;
  const double lo = s(s.size() - 1);
  return lo > 0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

PeriodPoint base_point(const Eigen::MatrixXd& J) {
  const int N = static_cast<int>(J.rows());
  if (J.cols() != N || N % 2) throw InputError("complex structure must be square of even size");
  const std::complex<double> i(0, 1);
  // (I - iJ)/2 projects onto the i-eigenspace when J^2 = -I.
  const Eigen::MatrixXcd proj =
      (Eigen::MatrixXcd::Identity(N, N) - i * J.cast<std::complex<double>>()) * std::complex<double>(0.5);
  PeriodPoint p;
  p.base = orthonormal_columns(proj, N / 2);
  p.t = Eigen::MatrixXcd::Zero(N / 2, N / 2);
  return p;
}

InvariantChart invariant_chart(const IntegralRepresentation& rho, const PeriodPoint& base) {
  const int n = static_cast<int>(base.base.cols());
  const auto& gens = rho.group().generators();
  InvariantChart chart;
  if (gens.empty()) {
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) {
        Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
        d(r, c) = 1;
        chart.directions.push_back(d);
      }
    return chart;
  }
  // vec(conj(A) t - t A) = (I (x) conj A - A^T (x) I) vec t
  const int m = n * n;
  Eigen::MatrixXcd sys(m * static_cast<int>(gens.size()), m);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Eigen::MatrixXcd r = to_eigen(rho.matrix(gens[k])).cast<std::complex<double>>();
    const Eigen::MatrixXcd a = base.base.adjoint() * r * base.base;
    const Eigen::MatrixXcd ab = a.conjugate();
    for (int c = 0; c < n; ++c)
      for (int rr = 0; rr < n; ++rr)
        for (int c2 = 0; c2 < n; ++c2)
          for (int r2 = 0; r2 < n; ++r2) {
            std::complex<double> v = 0;
            if (c == c2) v += ab(rr, r2);
            if (rr == r2) v -= a(c2, c);
            sys(static_cast<int>(k) * m + c * n + rr, c2 * n + r2) = v;
          }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-8 * std::max(1.0, s.size() ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  for (int k = rank; k < m; ++k) {
    Eigen::MatrixXcd d(n, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) d(r, c) = svd.matrixV()(c * n + r, k);
    chart.directions.push_back(d / d.norm());
  }
  return chart;
}

KahlerClass invariant_kahler_class(const IntegralRepresentation& rho, const PeriodPoint& base,
                                   const InvariantTwoFormSpace& space) {
  const int N = static_cast<int>(base.base.rows());
  const int n = N / 2;
  const std::complex<double> i(0, 1);
  Eigen::MatrixXcd w(N, N);
  w << base.base, base.base.conjugate();
  const Eigen::MatrixXcd winv = w.inverse();
  const Eigen::MatrixXcd l = winv.topRows(n);
  const Eigen::MatrixXcd lb = winv.bottomRows(n);  // = conj(l)
  const Eigen::MatrixXd omega0 = (i * (l.transpose() * lb - lb.transpose() * l)).real();
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(N, N);
  const int order = rho.group().order();
  for (int g = 0; g < order; ++g) {
    const Eigen::MatrixXd r = to_eigen(rho.matrix(g));
    omega += r.transpose() * omega0 * r;
  }
  omega /= order;
  KahlerClass out;
  out.omega = omega;
  const int pairs = N * (N - 1) / 2;
  Eigen::MatrixXd b(pairs, space.dimension());
  Eigen::VectorXd target(pairs);
  for (int k = 0; k < space.dimension(); ++k) {
    const Eigen::MatrixXd eta = to_eigen(space.basis[k]);
    int row = 0;
    for (int a = 0; a < N; ++a)
      for (int c = a + 1; c < N; ++c, ++row) b(row, k) = eta(a, c);
  }
  int row = 0;
  for (int a = 0; a < N; ++a)
    for (int c = a + 1; c < N; ++c, ++row) target(row) = omega(a, c);
  out.coordinates = space.dimension() ? Eigen::VectorXd(b.colPivHouseholderQr().solve(target)) : Eigen::VectorXd();
  out.relation_one_residual = zero_two_part(omega, base).norm();
  out.positivity_margin = positivity_margin(omega, base);
  return out;
}

Eigen::MatrixXcd zero_two_part(const Eigen::MatrixXd& xi, const PeriodPoint& p) {
  const Eigen::MatrixXcd ub = p.basis().conjugate();
  return ub.transpose() * xi.cast<std::complex<double>>() * ub;
}

double positivity_margin(const Eigen::MatrixXd& xi, const PeriodPoint& p) {
  const int n = static_cast<int>(p.base.cols());
  if (n == 0) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXcd q = orthonormal_columns(p.basis(), n);
  const std::complex<double> i(0, 1);
  Eigen::MatrixXcd h = -i * (q.transpose() * xi.cast<std::complex<double>>() * q.conjugate());
  h = (h + h.adjoint().eval()) * std::complex<double>(0.5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

int linearization_rank(const Eigen::MatrixXd& xi, const PeriodPoint& p, const InvariantChart& chart) {
  if (chart.dimension() == 0 || p.base.cols() < 2) return 0;
  const Eigen::MatrixXcd jac = jacobian(xi, p, chart);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
  const auto& s = svd.singularValues();
  const double cut = 1e-8 * std::max(1.0, s(0));
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return rank;
}

NewtonResult newton_solve(const Eigen::MatrixXd& xi, const PeriodPoint& start, const InvariantChart& chart,
                          const DeformOptions& options) {
  NewtonResult out{start, {}};
  PeriodPoint& p = out.point;
  const int n = static_cast<int>(p.base.cols());
  for (int iter = 0;; ++iter) {
    const Eigen::MatrixXcd g = holomorphic_part(xi, p.basis());
    const double r = g.norm();
    out.residuals.push_back(r);
    if (!std::isfinite(r)) break;
    const bool converged = r < options.tolerance;
    if (converged && (r == 0 || chart.dimension() == 0 || n < 2)) return out;
    if (!converged && (iter >= options.max_iterations || chart.dimension() == 0 || n < 2)) break;
    const Eigen::MatrixXcd jac = jacobian(xi, p, chart);
    const Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(-upper_entries(g));
    PeriodPoint next = p;
    for (int k = 0; k < chart.dimension(); ++k) next.t += step(k) * chart.directions[k];
    if (converged) {
      // one polishing step, kept only if it helps
      const double r2 = holomorphic_part(xi, next.basis()).norm();
      if (r2 < r) {
        p = next;
        out.residuals.push_back(r2);
      }
      return out;
    }
    p = next;
    if (!(p.t.norm() <= options.divergence_bound)) break;
  }
  throw Error("NoConvergence", "Newton did not reach |xi^{0,2}| < " + std::to_string(options.tolerance),
              {{"iterations", static_cast<int>(out.residuals.size()) - 1},
               {"residuals", out.residuals},
               {"t_norm", p.t.norm()}});
}

namespace {

DeformationResult search(const IntegralRepresentation& rho, const Eigen::MatrixXd& J, long max_denominator,
                         double epsilon, const DeformOptions& options, bool exhaustive) {
  if (max_denominator < 1) throw InputError("max_denominator must be positive");
  if (!(epsilon > 0)) throw InputError("epsilon must be positive");
  validate_complex_structure(rho, J, NumericTolerances{}.complex_structure);
  const PeriodPoint base = base_point(J);
  const InvariantTwoFormSpace space = invariant_two_forms(rho);
  const InvariantChart chart = invariant_chart(rho, base);
  const KahlerClass kahler = invariant_kahler_class(rho, base, space);
  const int b = space.dimension();
  if (b == 0) throw Error("BudgetExhausted", "no invariant 2-forms", {{"max_denominator", max_denominator}});

  Eigen::VectorXd w = kahler.coordinates;
  w /= w.cwiseAbs().maxCoeff();
  std::vector<std::vector<Rational>> conv(b);
  std::set<Integer> dens;
  for (int k = 0; k < b; ++k) {
    conv[k] = convergents(w(k), Integer(max_denominator));
    for (const auto& q : conv[k]) dens.insert(q.get_den());
  }

  std::optional<DeformationResult> best;
  std::string last_failure = "none";
  std::vector<Rational> previous;
  int tried = 0;
  for (const Integer& D : dens) {
    std::vector<Rational> q(b);
    for (int k = 0; k < b; ++k) {
      q[k] = conv[k].front();
      for (const auto& c : conv[k])
        if (c.get_den() <= D) q[k] = c;
    }
    if (q == previous) continue;
    previous = q;
    RatMatrix xi(rho.rank(), rho.rank(), Rational(0));
    for (int k = 0; k < b; ++k)
      if (!is_zero(q[k])) xi += space.basis[k] * q[k];
    if (is_zero_matrix(xi)) continue;
    ++tried;
    const Eigen::MatrixXd xd = to_eigen(xi);
    NewtonResult nr;
    try {
      nr = newton_solve(xd, base, chart, options);
    } catch (const Error& e) {
      last_failure = e.name();
      continue;
    }
    const double margin = positivity_margin(xd, nr.point);
    const double cond = nr.point.conditioning();
    if (!(margin > options.positivity)) {
      last_failure = "NotPositive";
      continue;
    }
    if (!(cond < options.conditioning)) {
      last_failure = "IllConditioned";
      continue;
    }
    const double tn = nr.point.t.norm();
    if (best && !(tn < best->t_norm)) continue;
    DeformationResult out;
    out.point = nr.point;
    out.t_norm = tn;
    out.xi = xi;
    out.coordinates = q;
    out.denominator = D.get_si();
    out.residual = zero_two_part(xd, nr.point).norm();
    out.positivity_margin = margin;
    out.conditioning = cond;
    out.chart_dimension = chart.dimension();
    out.newton_residuals = nr.residuals;
    best = out;
    if (tn < epsilon && !exhaustive) break;
  }
  if (best && best->t_norm < epsilon) {
    best->candidates_tried = tried;
    return *best;
  }
  nlohmann::json witness = {{"max_denominator", max_denominator},
                            {"epsilon", epsilon},
                            {"candidates_tried", tried},
                            {"last_failure", last_failure}};
  if (best)
    witness["best"] = {{"t_norm", best->t_norm},
                       {"denominator", best->denominator},
                       {"residual", best->residual},
                       {"positivity_margin", best->positivity_margin}};
  throw Error("BudgetExhausted", "no rational class within |t| < " + std::to_string(epsilon), witness);
}

}  // namespace

DeformationResult find_projective_neighbor(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                           long max_denominator, double epsilon, const DeformOptions& options) {
  return search(rho, J, max_denominator, epsilon, options, false);
}

DeformationResult best_projective_neighbor(const IntegralRepresentation& rho, const Eigen::MatrixXd& J,
                                           long max_denominator, const DeformOptions& options) {
  return search(rho, J, max_denominator, std::numeric_limits<double>::infinity(), options, true);
}

}  // namespace rigidtori
