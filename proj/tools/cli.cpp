#include "cli.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "rigidtori/deform.hpp"
#include "rigidtori/errors.hpp"
#include "rigidtori/fixtures.hpp"
#include "rigidtori/hodge.hpp"
#include "rigidtori/polarize.hpp"

namespace rigidtori::cli {

using nlohmann::json;

namespace {

// ---- input ---------------------------------------------------------------

void expect_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed,
                 const std::set<std::string>& required = {}) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw InputError("unknown field '" + key + "' in " + where);
  for (const auto& key : required)
    if (!obj.contains(key)) throw InputError(where + " is missing '" + key + "'");
}

long long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + " must be an integer");
  return v.get<long long>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + " must be a number");
  return v.get<double>();
}

std::vector<std::vector<json>> as_table(const json& v, const std::string& where, std::size_t rows, std::size_t cols) {
  if (!v.is_array() || v.size() != rows) throw InputError(where + " must have " + std::to_string(rows) + " rows");
  std::vector<std::vector<json>> out;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != cols)
      throw InputError(where + " rows must have " + std::to_string(cols) + " entries");
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

IntMatrix parse_int_matrix(const json& v, const std::string& where, int n) {
  IntMatrix m(n, n, Integer(0));
  const auto t = as_table(v, where, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Integer(std::to_string(as_integer(t[i][j], where)));
  return m;
}

Eigen::MatrixXd parse_real_matrix(const json& v, const std::string& where, int n) {
  Eigen::MatrixXd m(n, n);
  const auto t = as_table(v, where, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = as_number(t[i][j], where);
  return m;
}

FiniteGroup parse_group(const json& g) {
  expect_keys(g, "group", {"name", "cayley_table", "permutation_generators"}, {"name"});
  if (!g["name"].is_string()) throw InputError("group.name must be a string");
  const std::string name = g["name"];
  if (g.contains("cayley_table") && g.contains("permutation_generators"))
    throw InputError("group: give either cayley_table or permutation_generators");
  if (g.contains("cayley_table")) {
    const json& t = g["cayley_table"];
    if (!t.is_array()) throw InputError("group.cayley_table must be an array");
    FiniteGroup::Table table;
    for (const auto& row : as_table(t, "group.cayley_table", t.size(), t.size())) {
      std::vector<int> r;
      for (const auto& x : row) r.push_back(static_cast<int>(as_integer(x, "group.cayley_table")));
      table.push_back(std::move(r));
    }
    return FiniteGroup::from_cayley_table(std::move(table), name);
  }
  if (g.contains("permutation_generators")) {
    const json& p = g["permutation_generators"];
    if (!p.is_array()) throw InputError("group.permutation_generators must be an array");
    std::vector<std::vector<int>> gens;
    for (const auto& perm : p) {
      if (!perm.is_array()) throw InputError("each permutation must be an array");
      std::vector<int> v;
      for (const auto& x : perm) v.push_back(static_cast<int>(as_integer(x, "group.permutation_generators")));
      gens.push_back(std::move(v));
    }
    return FiniteGroup::from_permutations(gens, name);
  }
  return catalogue_group(name);
}

struct SymbolicInput {
  std::vector<int> multiplicities;
  std::vector<std::map<int, int>> tau;
};

struct RepresentationInput {
  IntegralRepresentation rho;
  std::optional<Eigen::MatrixXd> J;
  std::optional<SymbolicInput> symbolic;
};

SymbolicInput parse_symbolic(const json& s) {
  expect_keys(s, "symbolic_spec", {"multiplicities", "tau"}, {"multiplicities", "tau"});
  SymbolicInput out;
  if (!s["multiplicities"].is_array() || !s["tau"].is_array())
    throw InputError("symbolic_spec.multiplicities and symbolic_spec.tau must be arrays");
  for (const auto& m : s["multiplicities"])
    out.multiplicities.push_back(static_cast<int>(as_integer(m, "symbolic_spec.multiplicities")));
  for (const auto& row : s["tau"]) {
    if (!row.is_object()) throw InputError("symbolic_spec.tau entries must map residues to dimensions");
    std::map<int, int> t;
    for (const auto& [key, value] : row.items()) {
      std::size_t used = 0;
      int residue = 0;
      try {
        residue = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || key.empty()) throw InputError("symbolic_spec.tau key '" + key + "' is not a residue");
      t[residue] = static_cast<int>(as_integer(value, "symbolic_spec.tau"));
    }
    out.tau.push_back(std::move(t));
  }
  return out;
}

RepresentationInput parse_representation(const json& r) {
  expect_keys(r, "representation", {"rank", "generator_matrices", "J_matrix", "symbolic_spec"},
              {"rank", "generator_matrices"});
  const long long rank = as_integer(r["rank"], "representation.rank");
  if (rank < 2 || rank % 2 || rank > 64) throw InputError("representation.rank must be even, between 2 and 64");
  const int n = static_cast<int>(rank);
  if (!r["generator_matrices"].is_array()) throw InputError("representation.generator_matrices must be an array");
  std::vector<IntMatrix> gens;
  for (const auto& m : r["generator_matrices"]) gens.push_back(parse_int_matrix(m, "generator matrix", n));
  if (gens.empty()) {
    IntMatrix id(n, n, Integer(0));
    for (int i = 0; i < n; ++i) id(i, i) = 1;
    gens.push_back(id);
  }
  RepresentationInput out{IntegralRepresentation::from_generators(gens, "generated"), std::nullopt, std::nullopt};
  if (r.contains("J_matrix") && r.contains("symbolic_spec"))
    throw InputError("representation: give either J_matrix or symbolic_spec");
  if (r.contains("J_matrix")) out.J = parse_real_matrix(r["J_matrix"], "J_matrix", n);
  if (r.contains("symbolic_spec")) out.symbolic = parse_symbolic(r["symbolic_spec"]);
  return out;
}

struct PolynomialInput {
  QPoly f;
  std::optional<std::vector<int>> cm_type;
};

PolynomialInput parse_polynomial(const json& p) {
  expect_keys(p, "polynomial", {"coefficients", "cm_type"}, {"coefficients"});
  if (!p["coefficients"].is_array()) throw InputError("polynomial.coefficients must be an array");
  std::vector<long long> c;
  for (const auto& x : p["coefficients"]) c.push_back(as_integer(x, "polynomial.coefficients"));
  PolynomialInput out{QPoly::from_integers(c), std::nullopt};
  if (p.contains("cm_type")) {
    if (!p["cm_type"].is_array()) throw InputError("polynomial.cm_type must be an array");
    std::vector<int> s;
    for (const auto& x : p["cm_type"]) s.push_back(static_cast<int>(as_integer(x, "polynomial.cm_type")));
    out.cm_type = s;
  }
  return out;
}

struct Document {
  std::optional<FiniteGroup> group;
  std::optional<RepresentationInput> representation;
  std::optional<PolynomialInput> polynomial;
  std::optional<std::vector<int>> module_multiplicities;
};

Document parse_document(const json& doc) {
  expect_keys(doc, "input document", {"group", "representation", "polynomial", "module"});
  Document out;
  if (doc.contains("group")) out.group = parse_group(doc["group"]);
  if (doc.contains("representation")) out.representation = parse_representation(doc["representation"]);
  if (doc.contains("polynomial")) out.polynomial = parse_polynomial(doc["polynomial"]);
  if (doc.contains("module")) {
    expect_keys(doc["module"], "module", {"multiplicities"}, {"multiplicities"});
    if (!doc["module"]["multiplicities"].is_array()) throw InputError("module.multiplicities must be an array");
    std::vector<int> m;
    for (const auto& x : doc["module"]["multiplicities"])
      m.push_back(static_cast<int>(as_integer(x, "module.multiplicities")));
    out.module_multiplicities = m;
  }
  return out;
}

// ---- output --------------------------------------------------------------

json exact(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return to_string(q);
}

json exact(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

json exact(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(exact(x));
  return out;
}

template <class T>
json exact_matrix(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(exact(m(i, j)));
    out.push_back(row);
  }
  return out;
}

json numeric(double value, double tolerance) { return {{"value", value}, {"tolerance", tolerance}}; }

json cyclotomic_values(const std::vector<CyclotomicNumber>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json complex_matrix(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    out.push_back(row);
  }
  return out;
}

json signs_json(const std::map<int, int>& signs) {
  json out = json::object();
  for (const auto& [e, s] : signs) out[std::to_string(e)] = s;
  return out;
}

json tau_json(const std::map<int, int>& tau) {
  json out = json::object();
  for (const auto& [e, t] : tau) out[std::to_string(e)] = t;
  return out;
}

json spec_json(const SymbolicHodgeSpec& spec) {
  json fields = json::array(), tau = json::array();
  for (const auto& f : spec.fields) fields.push_back(f.describe());
  for (const auto& t : spec.tau) tau.push_back(tau_json(t));
  return {{"fields", fields}, {"multiplicities", spec.multiplicities}, {"tau", tau}};
}

json row_json(const EmbeddingRow& r) {
  return {{"field", r.field},         {"field_name", r.field_name}, {"embedding", r.embedding},
          {"conjugate", r.conjugate}, {"tau", r.tau},               {"tau_conjugate", r.tau_conjugate},
          {"product", r.product}};
}

std::string fixed(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

// ---- shared pipeline pieces ----------------------------------------------

struct Context {
  std::shared_ptr<const CharacterTable> table;
  GaloisOrbitDecomposition orbits;
};

Context context_for(const FiniteGroup& g) {
  Context c{std::make_shared<const CharacterTable>(character_table(g)), {}};
  c.orbits = galois_orbits(*c.table);
  return c;
}

const RepresentationInput& need_representation(const Document& d, const std::string& command) {
  if (!d.representation) throw InputError(command + " needs a 'representation'");
  return *d.representation;
}

HodgeCharacter hodge_data(const RepresentationInput& r, const Context& c, const Tolerances& tol,
                          SymbolicHodgeSpec& spec) {
  if (r.J) {
    validate_complex_structure(r.rho, *r.J, tol.complex_structure);
    HodgeCharacter chi = hodge_character_from_numeric(r.rho, *r.J, *c.table, {tol.complex_structure, tol.rounding});
    spec = symbolic_spec_from_character(chi, *c.table, c.orbits);
    validate_hodge_symmetry(spec, r.rho.rank() / 2);
    return chi;
  }
  if (r.symbolic) {
    const auto& s = *r.symbolic;
    const std::size_t l = c.orbits.orbits.size();
    if (s.multiplicities.size() != l || s.tau.size() != l)
      throw InputError("symbolic_spec needs one multiplicity and one tau table per Galois orbit (" +
                       std::to_string(l) + ")");
    spec.fields.clear();
    for (const auto& o : c.orbits.orbits) spec.fields.push_back(o.field);
    spec.multiplicities = s.multiplicities;
    spec.tau = s.tau;
    validate_hodge_symmetry(spec, r.rho.rank() / 2);
    HodgeCharacter chi = hodge_character_from_symbolic(spec, *c.table, c.orbits);
    // chi10 + conj(chi10) must be the character of rho
    const auto& reps = c.table->classes().reps;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const CyclotomicNumber v = chi.values[k] + chi.values[k].conjugate();
      if (v != c.table->field()->from_rational(Rational(r.rho.trace(reps[k]))))
        throw InputError("symbolic_spec multiplicities do not match the representation's character");
    }
    return chi;
  }
  throw InputError("representation needs J_matrix or symbolic_spec");
}

std::vector<int> module_multiplicities(const IntegralRepresentation& rho, const Context& c) {
  std::vector<CyclotomicNumber> chi;
  for (int rep : c.table->classes().reps) chi.push_back(c.table->field()->from_rational(Rational(rho.trace(rep))));
  std::vector<int> out;
  for (const auto& o : c.orbits.orbits) {
    const Rational m = c.table->inner_product(chi, o.representative).rational_value();
    out.push_back(static_cast<int>(m.get_num().get_si()) * c.table->degree(o.representative));
  }
  return out;
}

bool table_is_orthogonal(const CharacterTable& t) {
  long sum = 0;
  for (int i = 0; i < t.size(); ++i) {
    sum += static_cast<long>(t.degree(i)) * t.degree(i);
    for (int j = 0; j < t.size(); ++j) {
      const CyclotomicNumber ip = t.inner_product(t.row(i), j);
      if (!(ip == t.field()->from_rational(Rational(i == j ? 1 : 0)))) return false;
    }
  }
  return sum == t.group().order();
}

// ---- commands ------------------------------------------------------------

JobResult analyze(const JobSpec&, const Document& d) {
  if (!d.group && !d.representation) throw InputError("analyze needs a 'group' or a 'representation'");
  const FiniteGroup g = d.group ? *d.group : d.representation->rho.group();
  const Context c = context_for(g);
  const auto& cl = c.table->classes();
  json classes = json::array();
  for (std::size_t k = 0; k < cl.reps.size(); ++k)
    classes.push_back({{"index", k},
                       {"representative", cl.reps[k]},
                       {"size", cl.sizes[k]},
                       {"element_order", cl.rep_orders[k]},
                       {"inverse_class", cl.inverse_class[k]}});
  json rows = json::array(), degrees = json::array();
  for (int chi = 0; chi < c.table->size(); ++chi) {
    rows.push_back(cyclotomic_values(c.table->row(chi)));
    degrees.push_back(c.table->degree(chi));
  }
  json orbits = json::array();
  for (std::size_t j = 0; j < c.orbits.orbits.size(); ++j) {
    const auto& o = c.orbits.orbits[j];
    orbits.push_back({{"index", j},
                      {"members", o.members},
                      {"residues", o.residues},
                      {"field", o.field.describe()},
                      {"degree", o.field.degree()},
                      {"embeddings", o.field.embeddings()},
                      {"kind", to_string(o.kind)}});
  }
  json centre = json::array();
  for (const auto& comp : centre_decomposition(*c.table, c.orbits)) {
    json coords = json::array();
    for (const auto& v : comp.class_sum_coordinates) coords.push_back(exact(v));
    centre.push_back({{"orbit", comp.orbit}, {"field", comp.field.describe()}, {"class_sum_coordinates", coords}});
  }
  JobResult out;
  out.report = {{"command", "analyze"},
                {"group", {{"name", g.name()}, {"order", g.order()}, {"exponent", g.exponent()}}},
                {"classes", classes},
                {"character_table",
                 {{"variable", "z = exp(2 pi i / " + std::to_string(c.table->field()->conductor()) + ")"},
                  {"conductor", c.table->field()->conductor()},
                  {"degrees", degrees},
                  {"rows", rows},
                  {"orthogonality", table_is_orthogonal(*c.table)}}},
                {"orbits", orbits},
                {"centre", centre}};
  if (d.representation) {
    out.report["representation"] = {{"rank", d.representation->rho.rank()},
                                    {"module_multiplicities", module_multiplicities(d.representation->rho, c)}};
  }
  std::ostringstream h;
  h << "group " << g.name() << ", order " << g.order() << ", " << cl.reps.size() << " classes, "
    << c.orbits.orbits.size() << " Galois orbits\n";
  for (std::size_t j = 0; j < c.orbits.orbits.size(); ++j)
    h << "  orbit " << j << ": " << c.orbits.orbits[j].field.describe() << "  "
      << to_string(c.orbits.orbits[j].kind) << "\n";
  out.human = h.str();
  return out;
}

JobResult rigidity(const JobSpec& job, const Document& d) {
  const auto& r = need_representation(d, "rigidity");
  const Context c = context_for(r.rho.group());
  SymbolicHodgeSpec spec;
  const HodgeCharacter chi = hodge_data(r, c, job.tolerances, spec);
  const RigidityReport rep = analyze_rigidity(r.rho, chi, *c.table, c.orbits, true);
  json methods = json::array(), embeddings = json::array(), violations = json::array();
  for (const auto& m : rep.methods)
    methods.push_back({{"method", m.method}, {"hom_dimension", m.hom_dimension}, {"rigid", m.rigid}});
  for (const auto& e : rep.embeddings) embeddings.push_back(row_json(e));
  for (const auto& e : rep.violations) violations.push_back(row_json(e));
  JobResult out;
  out.report = {{"command", "rigidity"},
                {"group", r.rho.group().name()},
                {"rank", r.rho.rank()},
                {"chi10", cyclotomic_values(chi.values)},
                {"hodge_type", spec_json(spec)},
                {"hom_dimension", rep.hom_dimension},
                {"is_rigid", rep.is_rigid},
                {"methods", methods},
                {"verdicts_agree", rep.verdicts_agree},
                {"dimensions_agree", rep.dimensions_agree},
                {"embeddings", embeddings},
                {"violations", violations}};
  if (r.J) out.report["rounding_residual"] = numeric(chi.rounding_residual, job.tolerances.rounding);
  std::ostringstream h;
  h << (rep.is_rigid ? "rigid" : "not rigid") << ", dim Hom_G(V01, V10) = " << rep.hom_dimension << "\n";
  for (const auto& m : rep.methods) h << "  " << m.method << ": " << m.hom_dimension << "\n";
  out.human = h.str();
  return out;
}

JobResult enumerate_rigid(const JobSpec&, const Document& d) {
  Context c;
  std::vector<int> mult;
  std::string group;
  if (d.module_multiplicities) {
    if (!d.group) throw InputError("module.multiplicities needs a 'group'");
    c = context_for(*d.group);
    group = d.group->name();
    mult = *d.module_multiplicities;
    if (mult.size() != c.orbits.orbits.size())
      throw InputError("module.multiplicities needs one entry per Galois orbit (" +
                       std::to_string(c.orbits.orbits.size()) + ")");
    for (int m : mult)
      if (m < 0) throw InputError("module.multiplicities must be nonnegative");
  } else {
    const auto& r = need_representation(d, "enumerate-rigid");
    c = context_for(r.rho.group());
    group = r.rho.group().name();
    mult = module_multiplicities(r.rho, c);
  }
  std::vector<SubfieldSpec> fields;
  for (const auto& o : c.orbits.orbits) fields.push_back(o.field);
  const Integer count = rigid_type_count(fields, mult);
  json active = json::array();
  for (std::size_t j = 0; j < fields.size(); ++j)
    if (mult[j] > 0)
      active.push_back({{"orbit", j},
                        {"field", fields[j].describe()},
                        {"kind", to_string(fields[j].kind())},
                        {"multiplicity", mult[j]}});
  JobResult out;
  out.report = {{"command", "enumerate-rigid"},
                {"group", group},
                {"multiplicities", mult},
                {"active_fields", active},
                {"count", exact(count)}};
  json types = json::array();
  for (const auto& s : enumerate_rigid_types(fields, mult)) {
    json tau = json::array();
    for (const auto& t : s.tau) tau.push_back(tau_json(t));
    types.push_back(tau);
  }
  out.report["types"] = types;
  out.human = "rigid Hodge types: " + to_string(count) + "\n";
  return out;
}

json certificate_json(const PolarizationCertificate& cert, const Tolerances& tol) {
  json c = {{"method", cert.method},
            {"relation_I", cert.relation_one},
            {"relation_II", cert.relation_two},
            {"relation_II_statement", cert.relation_two_statement},
            {"rosati", cert.rosati},
            {"g_invariant", cert.g_invariant},
            {"passed", cert.passed()}};
  if (cert.method != "exact") {
    c["relation_I_residual"] = numeric(cert.relation_one_residual, tol.relation_one);
    c["min_eigenvalue_lower_bound"] = numeric(cert.min_eigenvalue_lower_bound, tol.min_eigenvalue);
  }
  return c;
}

JobResult polarize_polynomial(const PolynomialInput& p) {
  const PolynomialField F = PolynomialField::make(p.f);
  const std::vector<int> S = p.cm_type ? *p.cm_type : upper_half_plane_type(F);
  const ExistenceCertificate cert = polarization_exists(p.f, S);
  JobResult out;
  out.report = {{"command", "polarize"},
                {"field", cert.field},
                {"polynomial", p.f.str()},
                {"irreducibility_proof", F.irreducibility_proof()},
                {"cm_type", S},
                {"is_cm", F.complex_conjugation().has_value()},
                {"exists", cert.exists},
                {"witness", exact(cert.witness)},
                {"signs", signs_json(cert.signs)},
                {"obstruction", cert.obstruction}};
  out.human = std::string("polarization ") + (cert.exists ? "exists" : "does not exist") + " on " + cert.field + "\n";
  return out;
}

JobResult polarize(const JobSpec& job, const Document& d) {
  if (d.polynomial) {
    if (d.representation) throw InputError("polarize takes either a 'polynomial' or a 'representation'");
    return polarize_polynomial(*d.polynomial);
  }
  const auto& r = need_representation(d, "polarize");
  const Context c = context_for(r.rho.group());
  PolarizationOptions opts;
  opts.g_invariant = job.g_invariant;
  opts.basis_seed = job.seed;
  opts.relation_one_tolerance = job.tolerances.relation_one;
  opts.min_eigenvalue = job.tolerances.min_eigenvalue;
  PolarizationForm form;
  if (r.J) {
    validate_complex_structure(r.rho, *r.J, job.tolerances.complex_structure);
    form = assemble_polarization(r.rho, *r.J, *c.table, c.orbits, opts);
  } else {
    SymbolicHodgeSpec spec;
    hodge_data(r, c, job.tolerances, spec);
    form = assemble_polarization(r.rho, *c.table, c.orbits, spec, opts);
  }
  json zetas = json::array(), signs = json::array();
  for (const auto& s : form.summands) {
    zetas.push_back({{"orbit", s.orbit}, {"copy", s.copy}, {"field", s.field}, {"zeta", exact(s.zeta)}});
    signs.push_back(signs_json(s.signs));
  }
  const json cert = certificate_json(form.certificate, job.tolerances);
  JobResult out;
  out.report = {{"command", "polarize"},
                {"group", r.rho.group().name()},
                {"rank", form.rank},
                {"matrix", exact_matrix(form.E)},
                {"zeta_per_summand", zetas},
                {"signs", signs},
                {"relation_I", cert["relation_I"]},
                {"relation_II", cert["relation_II"]},
                {"rosati", cert["rosati"]},
                {"g_invariant", cert["g_invariant"]},
                {"certificate", cert}};
  std::ostringstream h;
  h << "polarization of rank " << form.rank << ", certificate " << (form.certificate.passed() ? "passed" : "FAILED")
    << "\n";
  for (std::size_t i = 0; i < form.E.rows(); ++i) {
    h << " ";
    for (std::size_t j = 0; j < form.E.cols(); ++j) h << " " << to_string(form.E(i, j));
    h << "\n";
  }
  out.human = h.str();
  return out;
}

JobResult deform(const JobSpec& job, const Document& d) {
  const auto& r = need_representation(d, "deform");
  if (!r.J) throw InputError("deform needs representation.J_matrix");
  DeformOptions opts;
  opts.tolerance = job.tolerances.newton;
  opts.positivity = job.tolerances.positivity;
  opts.conditioning = job.tolerances.conditioning;
  const DeformationResult res = find_projective_neighbor(r.rho, *r.J, job.max_denominator, job.epsilon, opts);
  JobResult out;
  out.report = {{"command", "deform"},
                {"group", r.rho.group().name()},
                {"rank", r.rho.rank()},
                {"max_denominator", job.max_denominator},
                {"epsilon", job.epsilon},
                {"chart_dimension", res.chart_dimension},
                {"t", complex_matrix(res.point.t)},
                {"t_norm", numeric(res.t_norm, job.epsilon)},
                {"xi", exact_matrix(res.xi)},
                {"xi_coordinates", exact(res.coordinates)},
                {"denominator", res.denominator},
                {"residual", numeric(res.residual, opts.tolerance)},
                {"positivity_margin", numeric(res.positivity_margin, opts.positivity)},
                {"conditioning", numeric(res.conditioning, opts.conditioning)},
                {"candidates_tried", res.candidates_tried},
                {"newton_residuals", res.newton_residuals},
                {"verdict", res.chart_dimension == 0 ? "rigid: projective at t = 0" : "projective neighbour found"}};
  if (res.chart_dimension == 0) {
    // a rigid torus is projective itself; the exact polarization must agree
    const Context c = context_for(r.rho.group());
    PolarizationOptions popts;
    popts.relation_one_tolerance = job.tolerances.relation_one;
    popts.min_eigenvalue = job.tolerances.min_eigenvalue;
    const PolarizationForm form = assemble_polarization(r.rho, *r.J, *c.table, c.orbits, popts);
    out.report["polarize_agrees"] = form.certificate.passed();
  }
  std::ostringstream h;
  h << "|t| = " << fixed(res.t_norm) << " at denominator " << res.denominator << ", residual "
    << fixed(res.residual) << ", margin " << fixed(res.positivity_margin) << "\n";
  out.human = h.str();
  return out;
}

JobResult selftest(const JobSpec& job) {
  const std::uint64_t seed = job.seed.value_or(1);
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok, json detail) {
    all = all && ok;
    checks.push_back({{"check", name}, {"passed", ok}, {"detail", std::move(detail)}});
  };

  int orthogonal = 0;
  for (const auto& e : group_catalogue()) orthogonal += table_is_orthogonal(character_table(e.group));
  record("character tables", orthogonal == static_cast<int>(group_catalogue().size()),
         {{"groups", group_catalogue().size()}, {"orthogonal", orthogonal}});

  int agree = 0, rigid = 0, polarized = 0;
  const auto fixtures = random_fixtures(24, seed);
  for (const auto& f : fixtures) {
    const auto orbits = galois_orbits(*f.table);
    const HodgeCharacter chi = hodge_character_from_numeric(f.rho, f.J, *f.table);
    const RigidityReport rep = analyze_rigidity(f.rho, chi, *f.table, orbits, true);
    agree += rep.verdicts_agree && rep.dimensions_agree;
    if (rep.is_rigid) {
      ++rigid;
      polarized += assemble_polarization(f.rho, f.J, *f.table, orbits).certificate.passed();
    }
  }
  record("rigidity methods agree", agree == static_cast<int>(fixtures.size()),
         {{"fixtures", fixtures.size()}, {"agree", agree}});
  record("rigid fixtures polarize", polarized == rigid, {{"rigid", rigid}, {"passed", polarized}});

  const Fixture gauss = gaussian_fixture();
  const auto form = assemble_polarization(gauss.rho, gauss.J, *gauss.table, galois_orbits(*gauss.table));
  IntMatrix standard(2, 2, Integer(0));
  standard(0, 1) = 1;
  standard(1, 0) = -1;
  record("gaussian polarization", form.E == standard, {{"matrix", exact_matrix(form.E)}});

  FixtureRng rng(seed);
  const Fixture torus = trivial_fixture(4, rng);
  const auto res = find_projective_neighbor(torus.rho, torus.J, 256, 1e-2);
  record("projective neighbour", res.residual < 1e-10 && res.positivity_margin > 1e-8,
         {{"t_norm", res.t_norm}, {"denominator", res.denominator}});

  JobResult out;
  out.report = {{"command", "selftest"}, {"seed", seed}, {"checks", checks}, {"passed", all}};
  std::ostringstream h;
  for (const auto& c : checks) h << (c["passed"].get<bool>() ? "ok    " : "FAIL  ") << c["check"].get<std::string>() << "\n";
  out.human = h.str();
  out.status = all ? 0 : 1;
  return out;
}

json error_report(const std::string& command, const std::string& name, const std::string& message,
                  const json& witness) {
  return {{"command", command}, {"error", {{"name", name}, {"message", message}, {"witness", witness}}}};
}

}  // namespace

JobResult run(const JobSpec& job, const json& document) {
  try {
    if (job.command == "selftest") return selftest(job);
    const Document d = parse_document(document);
    if (job.command == "analyze") return analyze(job, d);
    if (job.command == "rigidity") return rigidity(job, d);
    if (job.command == "enumerate-rigid") return enumerate_rigid(job, d);
    if (job.command == "polarize") return polarize(job, d);
    if (job.command == "deform") return deform(job, d);
    throw InputError("unknown command '" + job.command + "'");
  } catch (const Error& e) {
    JobResult out;
    out.status = 1;
    out.report = error_report(job.command, e.name(), e.what(), e.witness());
    out.human = std::string("error: ") + e.what() + "\n";
    return out;
  } catch (const InputError& e) {
    JobResult out;
    out.status = 2;
    out.report = error_report(job.command, "InputError", e.what(), nullptr);
    out.human = std::string("input error: ") + e.what() + "\n";
    return out;
  }
}

JobResult run(const JobSpec& job) {
  if (job.command == "selftest") return run(job, json::object());
  std::ifstream in(job.input);
  if (!in) {
    JobResult out;
    out.status = 2;
    out.report = error_report(job.command, "InputError", "cannot read " + job.input, nullptr);
    out.human = "input error: cannot read " + job.input + "\n";
    return out;
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    JobResult out;
    out.status = 2;
    out.report = error_report(job.command, "InputError", e.what(), nullptr);
    out.human = std::string("input error: ") + e.what() + "\n";
    return out;
  }
  return run(job, doc);
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace rigidtori::cli
