#include <benchmark/benchmark.h>

#include "rigidtori/deform.hpp"
#include "rigidtori/fixtures.hpp"
#include "rigidtori/polarize.hpp"

using namespace rigidtori;

static const char* const kGroups[] = {"S3", "Q8", "Dic12", "SD16", "Z16", "S4"};

static void BM_CharacterTable(benchmark::State& state) {
  const FiniteGroup& g = catalogue_group(kGroups[state.range(0)]);
  for (auto _ : state) {
    const CharacterTable t = character_table(g);
    benchmark::DoNotOptimize(t.size());
  }
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_CharacterTable)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

static void BM_GaloisOrbits(benchmark::State& state) {
  const CharacterTable t = character_table(catalogue_group(kGroups[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(galois_orbits(t).orbits.size());
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_GaloisOrbits)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

// One random fixture per iteration batch, rank up to 8.
static void BM_BruteForceHom(benchmark::State& state) {
  const auto fixtures = random_fixtures(16, 3);
  std::vector<HodgeCharacter> chis;
  for (const auto& f : fixtures) chis.push_back(hodge_character_from_numeric(f.rho, f.J, *f.table));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& f = fixtures[i % fixtures.size()];
    benchmark::DoNotOptimize(brute_force_hom_dimension(f.rho, chis[i % fixtures.size()], *f.table));
    ++i;
  }
}
BENCHMARK(BM_BruteForceHom)->Unit(benchmark::kMillisecond);

static void BM_AssemblePolarization(benchmark::State& state) {
  std::vector<Fixture> rigid;
  for (auto& f : random_fixtures(60, 9)) {
    const auto o = galois_orbits(*f.table);
    const auto spec = symbolic_spec_from_character(hodge_character_from_numeric(f.rho, f.J, *f.table), *f.table, o);
    if (rigidity_by_centre(spec).is_rigid) rigid.push_back(std::move(f));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& f = rigid[i++ % rigid.size()];
    const auto o = galois_orbits(*f.table);
    benchmark::DoNotOptimize(assemble_polarization(f.rho, f.J, *f.table, o).E.rows());
  }
}
BENCHMARK(BM_AssemblePolarization)->Unit(benchmark::kMillisecond);

static void BM_NewtonSolve(benchmark::State& state) {
  FixtureRng rng(12);
  const Fixture f = trivial_fixture(static_cast<int>(state.range(0)), rng);
  const PeriodPoint p = base_point(f.J);
  const InvariantChart chart = invariant_chart(f.rho, p);
  const DeformationResult d = find_projective_neighbor(f.rho, f.J, 64, 1.0);
  Eigen::MatrixXd xi(d.xi.rows(), d.xi.cols());
  for (int r = 0; r < xi.rows(); ++r)
    for (int c = 0; c < xi.cols(); ++c) xi(r, c) = d.xi(r, c).get_d();
  for (auto _ : state) benchmark::DoNotOptimize(newton_solve(xi, p, chart).residuals.size());
}
BENCHMARK(BM_NewtonSolve)->Arg(4)->Arg(6)->Arg(8);

static void BM_ProjectiveNeighbor(benchmark::State& state) {
  FixtureRng rng(13);
  const Fixture f = trivial_fixture(6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(best_projective_neighbor(f.rho, f.J, state.range(0)).t_norm);
}
BENCHMARK(BM_ProjectiveNeighbor)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
