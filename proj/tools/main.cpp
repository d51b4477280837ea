#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  rigidtori::cli::JobSpec job;
  std::string output;
  bool quiet = false;
  std::uint64_t seed = 0;

  CLI::App app{"Rigid complex tori with a finite group action: characters, Hodge types, polarizations, deformations"};
  app.require_subcommand(1);
  auto add = [&](const std::string& name, const std::string& help, bool needs_input) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (needs_input) sub->add_option("-i,--input", job.input, "input document (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", output, "write the machine-readable report here (stdout otherwise)");
    sub->add_option("--seed", seed, "seed for randomized choices");
    sub->add_flag("-q,--quiet", quiet, "no human-readable summary");
    sub->callback([&job, name] { job.command = name; });
    return sub;
  };
  add("analyze", "classes, character table, centre decomposition, field kinds", true);
  add("rigidity", "Hodge type and rigidity by three methods", true);
  add("enumerate-rigid", "count and list the rigid Hodge types of a module", true);
  CLI::App* pol = add("polarize", "build and certify a polarization", true);
  pol->add_flag("--g-invariant", job.g_invariant, "average the form over the group");
  CLI::App* def = add("deform", "nearby projective torus in the invariant chart", true);
  def->add_option("--max-denominator", job.max_denominator, "largest denominator of candidate classes")
      ->check(CLI::PositiveNumber);
  def->add_option("--epsilon", job.epsilon, "accept the first neighbour with |t| below this")
      ->check(CLI::PositiveNumber);
  add("selftest", "run the bundled fixture suite", false);

  auto& tol = job.tolerances;
  for (CLI::App* sub : app.get_subcommands({})) {
    sub->add_option("--tolerance-complex-structure", tol.complex_structure, "|J^2 + I| and |J rho - rho J|");
    sub->add_option("--tolerance-rounding", tol.rounding, "rounding of the numeric chi10");
    sub->add_option("--tolerance-newton", tol.newton, "Newton stop on |xi^{0,2}|");
    sub->add_option("--tolerance-positivity", tol.positivity, "positivity margin of the neighbour");
    sub->add_option("--tolerance-conditioning", tol.conditioning, "bound on cond [U_t | conj U_t]");
    sub->add_option("--tolerance-relation-one", tol.relation_one, "numeric relation I residual");
    sub->add_option("--tolerance-min-eigenvalue", tol.min_eigenvalue, "numeric relation II eigenvalue floor");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (CLI::App* sub : app.get_subcommands())
    if (sub->count("--seed")) job.seed = seed;

  const rigidtori::cli::JobResult result = rigidtori::cli::run(job);
  const std::string text = rigidtori::cli::render(result.report);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 2;
    }
    if (!quiet) std::cout << result.human;
  }
  if (result.status != 0 && output.empty() && !quiet) std::cerr << result.human;
  return result.status;
}
