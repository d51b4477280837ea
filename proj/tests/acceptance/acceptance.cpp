// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rigidtori/deform.hpp"
#include "rigidtori/errors.hpp"
#include "rigidtori/fixtures.hpp"
#include "rigidtori/polarize.hpp"

using namespace rigidtori;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body, double limit) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double s = seconds_since(t0);
  if (s > limit) o.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit) + " s");
  if (!o.pass) ++failures;
  std::printf("%s %d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), s, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
  std::fflush(stdout);
}

std::vector<std::string> catalogue_names() {
  std::vector<std::string> names;
  for (const auto& e : group_catalogue()) names.push_back(e.name);
  return names;
}

std::vector<Fixture>& fixtures200() {
  static std::vector<Fixture> f = random_fixtures(200, 2024);
  return f;
}

// sum over elements of a(g) conj(b(g)) for class functions
CyclotomicNumber pairing(const CharacterTable& t, const std::vector<CyclotomicNumber>& a,
                         const std::vector<CyclotomicNumber>& b) {
  CyclotomicNumber s = t.field()->zero();
  const auto& sizes = t.classes().sizes;
  for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c].conjugate() * t.field()->from_rational(Rational(sizes[c]));
  return s;
}

Outcome character_tables() {
  Outcome o;
  const std::vector<std::string> names = catalogue_names();
  for (const char* must : {"S4", "Q8"})
    if (std::find(names.begin(), names.end(), must) == names.end()) o.fail(std::string("catalogue lacks ") + must);
  for (const auto& name : names) {
    const FiniteGroup g = catalogue_group(name);
    const CharacterTable t = character_table(g);
    const int k = t.size();
    if (k != static_cast<int>(t.classes().reps.size())) o.fail(name + ": table is not square");
    long squares = 0;
    for (int i = 0; i < k; ++i) {
      squares += static_cast<long>(t.degree(i)) * t.degree(i);
      for (int j = 0; j < k; ++j) {
        const CyclotomicNumber p = pairing(t, t.row(i), t.row(j));
        if (!p.is_rational() || p.rational_value() != (i == j ? g.order() : 0))
          o.fail(name + ": rows " + std::to_string(i) + "," + std::to_string(j) + " not orthogonal");
      }
    }
    // column orthogonality: sum_chi chi(a) conj chi(b) = |C_G(a)| delta
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        CyclotomicNumber s = t.field()->zero();
        for (int i = 0; i < k; ++i) s += t.value(i, a) * t.value(i, b).conjugate();
        const long expect = a == b ? g.order() / t.classes().sizes[a] : 0;
        if (!s.is_rational() || s.rational_value() != expect) o.fail(name + ": columns not orthogonal");
      }
    if (squares != g.order()) o.fail(name + ": sum of squared degrees " + std::to_string(squares));
  }
  o.detail = o.pass ? std::to_string(names.size()) + " groups" : o.detail;
  return o;
}

Outcome idempotents() {
  Outcome o;
  int count = 0;
  for (const auto& name : catalogue_names()) {
    const FiniteGroup g = catalogue_group(name);
    const CharacterTable t = character_table(g);
    const auto orbits = galois_orbits(t);
    GroupAlgebraElement<Rational> total(g.order(), Rational(0));
    for (std::size_t a = 0; a < orbits.orbits.size(); ++a) {
      const auto& e = orbits.orbits[a].idempotent;
      ++count;
      // e_K(g) = sum over the orbit of chi(1)/|G| chi(g^-1)
      for (int x = 0; x < g.order(); ++x) {
        CyclotomicNumber v = t.field()->zero();
        for (int chi : orbits.orbits[a].members)
          v += t.at_element(chi, g.inverse(x)) * t.field()->from_rational(ratio(t.degree(chi), g.order()));
        if (!v.is_rational() || v.rational_value() != e[x]) o.fail(name + ": idempotent coefficients differ");
      }
      if (group_algebra_multiply(g, e, e) != e) o.fail(name + ": e_K^2 != e_K");
      for (std::size_t b = a + 1; b < orbits.orbits.size(); ++b) {
        const auto prod = group_algebra_multiply(g, e, orbits.orbits[b].idempotent);
        for (const auto& c : prod)
          if (c != 0) o.fail(name + ": idempotents not orthogonal");
      }
      for (int s : g.generators()) {
        GroupAlgebraElement<Rational> delta(g.order(), Rational(0));
        delta[s] = 1;
        if (group_algebra_multiply(g, delta, e) != group_algebra_multiply(g, e, delta))
          o.fail(name + ": idempotent not central");
      }
      for (int x = 0; x < g.order(); ++x) total[x] += e[x];
    }
    for (int x = 0; x < g.order(); ++x)
      if (total[x] != (x == 0 ? 1 : 0)) o.fail(name + ": idempotents do not sum to 1");
  }
  if (o.pass) o.detail = std::to_string(count) + " idempotents";
  return o;
}

Outcome rigidity_agreement() {
  Outcome o;
  int rigid = 0;
  for (const auto& f : fixtures200()) {
    if (f.table->group().order() > 16 || f.rho.rank() > 8) o.fail(f.name + ": out of range");
    const auto orbits = galois_orbits(*f.table);
    const HodgeCharacter chi10 = hodge_character_from_numeric(f.rho, f.J, *f.table);
    if (chi10.values != f.expected_chi10) o.fail(f.name + ": chi10 differs from construction");
    const RigidityReport r = analyze_rigidity(f.rho, chi10, *f.table, orbits, true);
    if (r.methods.size() != 3) o.fail(f.name + ": not all methods ran");
    if (!r.verdicts_agree || !r.dimensions_agree) o.fail(f.name + ": methods disagree");
    rigid += r.is_rigid;
  }
  if (o.pass) o.detail = std::to_string(fixtures200().size()) + " fixtures, " + std::to_string(rigid) + " rigid";
  return o;
}

Outcome cm_dichotomy() {
  Outcome o;
  int fields = 0;
  for (const auto& name : catalogue_names()) {
    const CharacterTable t = character_table(catalogue_group(name));
    for (const auto& orb : galois_orbits(t).orbits) {
      ++fields;
      // an abelian field generated by character values is CM iff some value is not real
      bool real_values = true;
      for (const auto& v : t.row(orb.representative)) real_values = real_values && v.conjugate() == v;
      const FieldKind oracle = real_values ? FieldKind::TotallyReal : FieldKind::CM;
      if (orb.kind != oracle) o.fail(name + ": " + orb.field.describe() + " tagged " + to_string(orb.kind));
      std::vector<int> S;
      for (int e : orb.field.embeddings())
        if (e <= orb.field.conjugate_embedding(e)) S.push_back(e);
      const ExistenceCertificate c = polarization_exists(orb.field, S);
      if (c.exists != (oracle == FieldKind::CM)) o.fail(name + ": existence disagrees with CM on " + orb.field.describe());
    }
  }
  const QPoly f = QPoly::from_integers({1, 1, 0, 0, 1});
  const PolynomialField F = PolynomialField::make(f);
  const ExistenceCertificate c = polarization_exists(f, upper_half_plane_type(F));
  if (c.exists) o.fail("x^4+x+1 reported polarizable");
  if (F.complex_conjugation()) o.fail("x^4+x+1 has a complex conjugation");
  if (!F.primitivity_prime()) o.fail("x^4+x+1 has no primitivity certificate");
  if (c.obstruction.is_null() || !c.obstruction.contains("pair")) o.fail("x^4+x+1 obstruction lacks a witness pair");
  if (o.pass) o.detail = std::to_string(fields) + " character fields; x^4+x+1 NotCM, primitivity prime " +
                         c.obstruction["primitivity_prime"].dump() + ", pair " + c.obstruction["pair"].dump();
  return o;
}

Outcome rigid_polarizations() {
  Outcome o;
  int rigid = 0;
  for (const auto& f : fixtures200()) {
    const auto orbits = galois_orbits(*f.table);
    const auto spec = symbolic_spec_from_character(hodge_character_from_numeric(f.rho, f.J, *f.table), *f.table, orbits);
    if (!rigidity_by_centre(spec).is_rigid) continue;
    ++rigid;
    const PolarizationForm form = assemble_polarization(f.rho, *f.table, orbits, spec);
    const auto& c = form.certificate;
    if (c.method != "exact" || !c.relation_one || !c.relation_two || !c.rosati) o.fail(f.name + ": certificate fails");
    // independent recheck of the form itself
    const RatMatrix E = to_rational(form.E);
    if (!(E.transpose() == E * Rational(-1))) o.fail(f.name + ": E not alternating");
    if (!verify_polarization(E, f.rho, *f.table, orbits, spec).passed()) o.fail(f.name + ": reverification fails");
  }
  const Fixture g = gaussian_fixture();
  const PolarizationForm z4 = assemble_polarization(g.rho, g.J, *g.table, galois_orbits(*g.table));
  IntMatrix expect(2, 2, Integer(0));
  expect(0, 1) = 1;
  expect(1, 0) = -1;
  if (!(z4.E == expect)) o.fail("Z/4 polarization is not [[0,1],[-1,0]]");
  if (rigid == 0) o.fail("no rigid fixtures");
  if (o.pass) o.detail = std::to_string(rigid) + " rigid fixtures; Z/4 gives [[0,1],[-1,0]]";
  return o;
}

// Count of tau with tau(e) + tau(conj e) = n_j and tau(e) tau(conj e) = 0, by brute force.
long brute_force_types(const std::vector<SubfieldSpec>& fields, const std::vector<int>& mult) {
  std::vector<std::pair<int, int>> slots;  // (field, embedding)
  for (std::size_t j = 0; j < fields.size(); ++j)
    if (mult[j] > 0)
      for (int e : fields[j].embeddings()) slots.push_back({static_cast<int>(j), e});
  std::vector<int> tau(slots.size(), 0);
  long count = 0;
  while (true) {
    std::map<std::pair<int, int>, int> at;
    for (std::size_t s = 0; s < slots.size(); ++s) at[slots[s]] = tau[s];
    bool ok = true;
    for (std::size_t s = 0; s < slots.size() && ok; ++s) {
      const auto [j, e] = slots[s];
      const int tb = at[{j, fields[j].conjugate_embedding(e)}];
      ok = tau[s] + tb == mult[j] && tau[s] * tb == 0;
    }
    count += ok;
    std::size_t s = 0;
    while (s < slots.size() && ++tau[s] > mult[slots[s].first]) tau[s++] = 0;
    if (s == slots.size()) break;
  }
  return count;
}

Outcome rigid_counts() {
  Outcome o;
  const CharacterTable t5 = character_table(FiniteGroup::cyclic(5));
  std::vector<SubfieldSpec> f5;
  for (const auto& orb : galois_orbits(t5).orbits) f5.push_back(orb.field);
  std::vector<int> m5(f5.size(), 0);
  for (std::size_t j = 0; j < f5.size(); ++j) m5[j] = f5[j].degree() == 4 ? 1 : 0;
  if (rigid_type_count(f5, m5) != 4) o.fail("Q(zeta5), n = 1: count is not 4");
  for (const char* name : {"S3", "S4"}) {
    const CharacterTable t = character_table(catalogue_group(name));
    std::vector<SubfieldSpec> fs;
    std::vector<int> regular;
    for (const auto& orb : galois_orbits(t).orbits) {
      fs.push_back(orb.field);
      regular.push_back(t.degree(orb.representative));
    }
    if (rigid_type_count(fs, regular) != 0 || !enumerate_rigid_types(fs, regular).empty())
      o.fail(std::string(name) + ": rigid types on the regular module");
  }
  FixtureRng rng(77);
  int compared = 0;
  for (const auto& name : catalogue_names()) {
    const CharacterTable t = character_table(catalogue_group(name));
    std::vector<SubfieldSpec> fs;
    for (const auto& orb : galois_orbits(t).orbits) fs.push_back(orb.field);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<int> mult(fs.size(), 0);
      int embeddings = 0;
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const int n = rng.below(3);
        if (n > 0 && embeddings + fs[j].degree() <= 12) {
          mult[j] = n;
          embeddings += fs[j].degree();
        }
      }
      // expected count: product of 2^(pairs) over active CM fields, 0 with an active real field
      Integer formula = 1;
      for (std::size_t j = 0; j < fs.size(); ++j)
        if (mult[j] > 0) formula *= fs[j].kind() == FieldKind::CM ? Integer(1) << (fs[j].degree() / 2) : Integer(0);
      const long brute = brute_force_types(fs, mult);
      const Integer count = rigid_type_count(fs, mult);
      const auto listed = enumerate_rigid_types(fs, mult).size();
      if (count != formula || count != brute || static_cast<long>(listed) != brute)
        o.fail(name + ": count " + count.get_str() + ", formula " + formula.get_str() + ", brute " +
               std::to_string(brute) + ", listed " + std::to_string(listed));
      ++compared;
    }
  }
  if (o.pass) o.detail = std::to_string(compared) + " brute-force comparisons";
  return o;
}

Outcome deformations() {
  Outcome o;
  FixtureRng rng(2025);
  double worst_residual = 0, worst_margin = 1e300;
  for (int rank : {4, 6})
    for (int i = 0; i < 10; ++i) {
      const Fixture f = trivial_fixture(rank, rng);
      const std::string tag = "rank " + std::to_string(rank) + " #" + std::to_string(i);
      try {
        const DeformationResult r = find_projective_neighbor(f.rho, f.J, 256, 1e-2);
        if (r.residual >= 1e-10) o.fail(tag + ": residual " + std::to_string(r.residual));
        if (r.positivity_margin <= 1e-8) o.fail(tag + ": margin " + std::to_string(r.positivity_margin));
        worst_residual = std::max(worst_residual, r.residual);
        worst_margin = std::min(worst_margin, r.positivity_margin);
      } catch (const Error& e) {
        o.fail(tag + ": " + e.name());
      }
      double last = 1e300;
      for (long d : {16L, 64L, 256L}) {
        const DeformationResult b = best_projective_neighbor(f.rho, f.J, d);
        if (b.t_norm > last) o.fail(tag + ": |t| grows at denominator " + std::to_string(d));
        last = b.t_norm;
      }
    }
  int rigid = 0;
  for (const auto& f : fixtures200()) {
    const auto orbits = galois_orbits(*f.table);
    const auto spec = symbolic_spec_from_character(hodge_character_from_numeric(f.rho, f.J, *f.table), *f.table, orbits);
    const bool is_rigid = rigidity_by_centre(spec).is_rigid;
    if (!is_rigid) continue;
    ++rigid;
    const DeformationResult r = find_projective_neighbor(f.rho, f.J, 256, 1e-2);
    if (r.chart_dimension != 0 || r.t_norm != 0) o.fail(f.name + ": rigid fixture moved");
    bool polarizable = false;
    try {
      polarizable = assemble_polarization(f.rho, f.J, *f.table, orbits).certificate.passed();
    } catch (const Error&) {
    }
    if (!polarizable) o.fail(f.name + ": deform says projective, polarize disagrees");
  }
  if (o.pass) {
    std::ostringstream s;
    s << "20 trivial tori, worst residual " << worst_residual << ", worst margin " << worst_margin << "; " << rigid
      << " rigid fixtures at t = 0";
    o.detail = s.str();
  }
  return o;
}

nlohmann::json load(const std::string& name) {
  std::ifstream in(std::string(RIGIDTORI_FIXTURE_DIR) + "/" + name);
  return nlohmann::json::parse(in);
}

Outcome cli_determinism() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"analyze", "s4.json"},         {"rigidity", "q8.json"},   {"enumerate-rigid", "z5_cyclotomic.json"},
      {"polarize", "z5_cyclotomic.json"}, {"polarize", "x4_x_1.json"}, {"deform", "trivial_rank4.json"},
      {"selftest", ""}};
  for (const auto& [command, file] : jobs) {
    cli::JobSpec job;
    job.command = command;
    job.seed = 31337;
    const nlohmann::json doc = file.empty() ? nlohmann::json::object() : load(file);
    const std::string a = cli::render(cli::run(job, doc).report);
    const std::string b = cli::render(cli::run(job, doc).report);
    if (a != b) o.fail(command + " " + file + ": outputs differ");
  }
  if (o.pass) o.detail = std::to_string(jobs.size()) + " jobs";
  return o;
}

}  // namespace

int main() {
  report(1, "character tables exact and complete", character_tables, 60);
  report(2, "central idempotents exact", idempotents, 60);
  report(3, "character, centre and brute-force rigidity agree", rigidity_agreement, 300);
  report(4, "character fields are totally real or CM; existence iff CM", cm_dichotomy, 120);
  report(5, "rigid polarizations certified", rigid_polarizations, 300);
  report(6, "rigid type counts", rigid_counts, 120);
  report(7, "projective neighbours of trivial tori", deformations, 300);
  report(8, "CLI output is byte-identical under a fixed seed", cli_determinism, 120);
  return failures == 0 ? 0 : 1;
}
