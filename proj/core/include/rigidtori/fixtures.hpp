#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "rigidtori/hodge.hpp"

namespace rigidtori {

/// A complex torus with a group action, together with the exact character
/// of V^{1,0} it was built to have.
struct Fixture {
  std::string name;
  std::shared_ptr<const CharacterTable> table;
  IntegralRepresentation rho;
  Eigen::MatrixXd J;
  std::vector<CyclotomicNumber> expected_chi10;  // per class of `table`
  /// "rigid:<orbit>:<S>", "scalar:<k>:<lambda>", "doubled:<r>" per block.
  std::vector<std::string> blocks;
};

/// Portable draws on top of mt19937_64 (the std distributions are not
/// reproducible across standard libraries).
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : gen_(seed) {}
  /// Uniform in [0, n).
  int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
  /// Uniform in [-1, 1).
  double symmetric() { return static_cast<double>(gen_() >> 11) * 0x1.0p-52 - 1.0; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Z/4 acting on Z^2 by [[0,-1],[1,0]] with J = rho(generator).
Fixture gaussian_fixture();
/// Z/3 acting on Z^2 by [[0,-1],[1,-1]], V^{1,0} the zeta_3-eigenline.
Fixture eisenstein_fixture();
/// Trivial group on Z^rank with a random complex structure A J0 A^-1.
Fixture trivial_fixture(int rank, FixtureRng& rng);
/// A random complex structure on R^rank (rank even): A J0 A^-1 with A = I + noise.
Eigen::MatrixXd random_complex_structure(int rank, FixtureRng& rng);

/// Random fixtures over catalogue groups of order <= 16 with rank <= max_rank,
/// each a direct sum of blocks conjugated by a random unimodular matrix:
///   rigid   - a CM Galois-orbit component of the regular representation with a
///             random CM type S, V^{1,0} = sum over S of the sigma_a(chi)-isotypic parts
///   scalar  - rho = lambda I for a +-1 linear character, any J
///   doubled - rho0 + rho0 with J = [[0,-I],[I,0]], so chi10 = chi_rho0
std::vector<Fixture> random_fixtures(int count, std::uint64_t seed, int max_rank = 8);

}  // namespace rigidtori
