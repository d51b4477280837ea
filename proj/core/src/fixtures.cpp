#include "rigidtori/fixtures.hpp"

#include <map>

#include "rigidtori/lattice.hpp"
#include "rigidtori/matrix.hpp"

namespace rigidtori {

namespace {

Eigen::MatrixXd standard_j(int k) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  j.topRightCorner(k, k) = -Eigen::MatrixXd::Identity(k, k);
  j.bottomLeftCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
  return j;
}

Eigen::MatrixXd block_diag(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

std::shared_ptr<const CharacterTable> table_for(const std::string& name) {
  static std::map<std::string, std::shared_ptr<const CharacterTable>> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const CharacterTable>(character_table(catalogue_group(name)));
  cache.emplace(name, t);
  return t;
}

std::vector<CyclotomicNumber> zeros(const CharacterTable& t) {
  return std::vector<CyclotomicNumber>(t.classes().count, t.field()->zero());
}

/// Product of random elementary matrices: unimodular with small entries.
IntMatrix random_unimodular(int n, FixtureRng& rng) {
  IntMatrix u = identity(n, Integers{});
  if (n < 2) return u;
  for (int step = 0; step < 2 * n; ++step) {
    const int i = rng.below(n);
    int j = rng.below(n - 1);
    if (j >= i) ++j;
    const int s = rng.below(2) ? 1 : -1;
    for (int r = 0; r < n; ++r) u(r, i) += s * u(r, j);
  }
  return u;
}

IntegralRepresentation conjugate_by(const IntegralRepresentation& rho, const IntMatrix& u) {
  const RatMatrix uq = to_rational(u);
  const RatMatrix uinv = *inverse(uq, Rationals{});
  std::vector<IntMatrix> mats;
  for (int g = 0; g < rho.group().order(); ++g) mats.push_back(to_integer(uinv * rho.rational(g) * uq));
  return IntegralRepresentation::from_group(rho.group(), std::move(mats));
}

Eigen::MatrixXd to_double(const IntMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

struct Block {
  IntegralRepresentation rho;
  Eigen::MatrixXd J;
  std::vector<CyclotomicNumber> chi10;
  std::string label;
};

/// Rational-valued linear characters (values +-1), by row index.
std::vector<int> sign_characters(const CharacterTable& t) {
  std::vector<int> out;
  for (int chi = 0; chi < t.size(); ++chi) {
    if (t.degree(chi) != 1) continue;
    bool rational = true;
    for (const auto& v : t.row(chi)) rational = rational && v.is_rational();
    if (rational) out.push_back(chi);
  }
  return out;
}

Block rigid_block(const CharacterTable& t, const GaloisOrbitDecomposition& orbits, int j, FixtureRng& rng) {
  const auto& o = orbits.orbits[j];
  const FieldPtr& f = t.field();
  auto [rho, lattice] = restrict_to_image(regular_representation(t.group()), o.idempotent);
  // CM type: one embedding from every conjugate pair
  std::vector<int> S;
  for (int a : o.field.embeddings()) {
    const int b = o.field.conjugate_embedding(a);
    if (a < b) S.push_back(rng.below(2) ? b : a);
  }
  std::sort(S.begin(), S.end());
  const int n = rho.rank();
  CycMatrix P(n, n, f->zero());
  auto chi10 = zeros(t);
  for (int a : S) {
    const int member = t.galois_image(o.representative, a);
    P += rho.apply(central_idempotent(t, member), f);
    for (int k = 0; k < t.classes().count; ++k) chi10[k] += t.value(member, k) * Rational(t.degree(member));
  }
  Eigen::MatrixXd J(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) J(r, c) = -2 * P(r, c).embed_double(1).imag();
  std::string label = "rigid:" + std::to_string(j) + ":";
  for (std::size_t i = 0; i < S.size(); ++i) label += (i ? "," : "") + std::to_string(S[i]);
  return {std::move(rho), J, std::move(chi10), label};
}

Block scalar_block(const CharacterTable& t, int lambda, int k, FixtureRng& rng) {
  const auto& G = t.group();
  std::vector<IntMatrix> mats;
  for (int g = 0; g < G.order(); ++g) {
    IntMatrix m = identity(2 * k, Integers{});
    m *= Integer(t.at_element(lambda, g).rational_value().get_num());
    mats.push_back(std::move(m));
  }
  auto chi10 = zeros(t);
  for (int c = 0; c < t.classes().count; ++c) chi10[c] = t.value(lambda, c) * Rational(k);
  return {IntegralRepresentation::from_group(G, std::move(mats)), random_complex_structure(2 * k, rng), std::move(chi10),
          "scalar:" + std::to_string(k) + ":" + std::to_string(lambda)};
}

Block doubled_block(const IntegralRepresentation& rho0, const CharacterTable& t, const std::string& what) {
  auto chi10 = zeros(t);
  for (int c = 0; c < t.classes().count; ++c)
    chi10[c] = t.field()->from_rational(Rational(rho0.trace(t.classes().reps[c])));
  return {IntegralRepresentation::direct_sum(rho0, rho0), standard_j(rho0.rank()), std::move(chi10),
          "doubled:" + what};
}

}  // namespace

Eigen::MatrixXd random_complex_structure(int rank, FixtureRng& rng) {
  while (true) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(rank, rank);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c) a(r, c) += 0.6 * rng.symmetric();
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) continue;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    if (s(0) / s(s.size() - 1) > 20) continue;
    return a * standard_j(rank / 2) * lu.inverse();
  }
}

Fixture gaussian_fixture() {
  auto t = table_for("Z4");
  IntMatrix g(2, 2, Integer(0));
  g(0, 1) = -1;
  g(1, 0) = 1;
  std::vector<IntMatrix> mats{identity(2, Integers{})};
  for (int k = 1; k < 4; ++k) mats.push_back(mats.back() * g);
  auto rho = IntegralRepresentation::from_group(t->group(), std::move(mats));
  const Eigen::MatrixXd J = to_double(g);
  // chi10(g) = (tr g - i tr(g J)) / 2 = i
  auto chi10 = zeros(*t);
  const FieldPtr& f = t->field();
  for (int c = 0; c < t->classes().count; ++c) chi10[c] = f->zeta(t->classes().reps[c]);
  return {"gaussian", t, std::move(rho), J, std::move(chi10), {"rigid:gaussian"}};
}

Fixture eisenstein_fixture() {
  auto t = table_for("Z3");
  IntMatrix g(2, 2, Integer(0));
  g(0, 1) = -1;
  g(1, 0) = 1;
  g(1, 1) = -1;
  std::vector<IntMatrix> mats{identity(2, Integers{}), g, g * g};
  auto rho = IntegralRepresentation::from_group(t->group(), std::move(mats));
  // rho(g) acts on V^{1,0} by zeta_3 = (-1 + i sqrt 3)/2, so J = (2 rho(g) + I)/sqrt 3.
  const Eigen::MatrixXd J = (2 * to_double(g) + Eigen::MatrixXd::Identity(2, 2)) / std::sqrt(3.0);
  auto chi10 = zeros(*t);
  const FieldPtr& f = t->field();
  for (int c = 0; c < t->classes().count; ++c) chi10[c] = f->zeta(t->classes().reps[c]);
  return {"eisenstein", t, std::move(rho), J, std::move(chi10), {"rigid:eisenstein"}};
}

Fixture trivial_fixture(int rank, FixtureRng& rng) {
  auto t = table_for("Z1");
  auto rho = IntegralRepresentation::from_group(t->group(), {identity(rank, Integers{})});
  std::vector<CyclotomicNumber> chi10{t->field()->from_rational(Rational(rank / 2))};
  return {"trivial-" + std::to_string(rank), t, std::move(rho), random_complex_structure(rank, rng), std::move(chi10),
          {"scalar:" + std::to_string(rank / 2) + ":0"}};
}

std::vector<Fixture> random_fixtures(int count, std::uint64_t seed, int max_rank) {
  FixtureRng rng(seed);
  std::vector<std::string> names;
  for (const auto& e : group_catalogue())
    if (e.group.order() <= 16) names.push_back(e.name);

  std::vector<Fixture> out;
  while (static_cast<int>(out.size()) < count) {
    const std::string gname = names[rng.below(static_cast<int>(names.size()))];
    auto t = table_for(gname);
    const auto orbits = galois_orbits(*t);
    std::vector<int> cm_orbits, small_orbits;
    for (std::size_t j = 0; j < orbits.orbits.size(); ++j) {
      int rank = 0;
      for (int m : orbits.orbits[j].members) rank += t->degree(m) * t->degree(m);
      if (orbits.orbits[j].kind == FieldKind::CM && rank <= max_rank) cm_orbits.push_back(static_cast<int>(j));
      if (2 * rank <= max_rank) small_orbits.push_back(static_cast<int>(j));
    }
    const auto signs = sign_characters(*t);
    const bool rigid_only = !cm_orbits.empty() && rng.below(2) == 0;

    std::vector<Block> blocks;
    int used = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      if (!blocks.empty() && rng.below(3) == 0) break;
      const int kind = rigid_only ? 0 : rng.below(3);
      if (kind == 0 && !cm_orbits.empty()) {
        const int j = cm_orbits[rng.below(static_cast<int>(cm_orbits.size()))];
        Block b = rigid_block(*t, orbits, j, rng);
        if (used + b.rho.rank() > max_rank) continue;
        used += b.rho.rank();
        blocks.push_back(std::move(b));
      } else if (kind == 1 || (kind == 0 && cm_orbits.empty())) {
        if (used + 2 > max_rank) continue;
        const int k = 1 + rng.below(std::min(2, (max_rank - used) / 2));
        blocks.push_back(scalar_block(*t, signs[rng.below(static_cast<int>(signs.size()))], k, rng));
        used += 2 * k;
      } else {
        if (small_orbits.empty()) continue;
        const int j = small_orbits[rng.below(static_cast<int>(small_orbits.size()))];
        auto rho0 = restrict_to_image(regular_representation(t->group()), orbits.orbits[j].idempotent).first;
        if (used + 2 * rho0.rank() > max_rank) continue;
        used += 2 * rho0.rank();
        blocks.push_back(doubled_block(rho0, *t, std::to_string(j)));
      }
    }
    if (blocks.empty()) continue;

    IntegralRepresentation rho = blocks.front().rho;
    Eigen::MatrixXd J = blocks.front().J;
    auto chi10 = blocks.front().chi10;
    std::vector<std::string> labels{blocks.front().label};
    for (std::size_t b = 1; b < blocks.size(); ++b) {
      rho = IntegralRepresentation::direct_sum(rho, blocks[b].rho);
      J = block_diag(J, blocks[b].J);
      for (std::size_t c = 0; c < chi10.size(); ++c) chi10[c] += blocks[b].chi10[c];
      labels.push_back(blocks[b].label);
    }
    const IntMatrix u = random_unimodular(rho.rank(), rng);
    const Eigen::MatrixXd ud = to_double(u);
    rho = conjugate_by(rho, u);
    J = ud.inverse() * J * ud;
    const std::string name = "random-" + std::to_string(out.size()) + "-" + gname;
    out.push_back({name, t, std::move(rho), J, std::move(chi10), std::move(labels)});
  }
  return out;
}

}  // namespace rigidtori
