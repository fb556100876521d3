// Command-line front end over the facering library.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "facering/cohomology_ring.hpp"
#include "facering/fixtures.hpp"
#include "facering/hochster.hpp"
#include "facering/io.hpp"
#include "facering/verify.hpp"

namespace {

using namespace facering;
using Json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_verification = 3;
constexpr int schema_version = 1;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> fields;
  std::string format = "text";
  unsigned threads = 1;
  std::optional<int> nonsquarefree_bound;
  bool multigraded = false;
  std::uint64_t seed = 0;
  double density = 0.5;
  int m = 6;
  bool corpus = false;
  bool inject_fault = false;
  std::optional<int> min_degree;
  std::optional<int> max_degree;
  std::vector<std::string> monomials;
  int attempts = 5;
  std::string lambda;

  bool json() const { return format == "json"; }
  std::string field() const { return fields.empty() ? "q" : fields.back(); }
};

Json envelope(const std::string& command) { return Json{{"schema", schema_version}, {"command", command}}; }

void emit(const RunConfig& config, const Json& doc, const std::string& text) {
  if (config.json())
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

SimplicialComplex single_input(const RunConfig& config) {
  if (config.inputs.size() != 1)
    throw Error(ErrorCode::invalid_input, config.command + " takes exactly one input file");
  return load_complex(config.inputs.front());
}

std::string dims_to_text(const std::map<int, std::size_t>& dims) {
  std::string s;
  for (const auto& [k, d] : dims) s += (s.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(d);
  return "{" + s + "}";
}

Json dims_to_json(const std::map<int, std::size_t>& dims) {
  Json out = Json::object();
  for (const auto& [k, d] : dims) out[std::to_string(k)] = d;
  return out;
}

int cmd_betti(const RunConfig& config) {
  const SimplicialComplex k = single_input(config);
  return std::visit(
      [&](const auto& field) {
        const BettiTable table = betti_table(k, field, KoszulOptions{std::nullopt, config.threads, std::nullopt});
        const auto dims = total_degree_dims(table);
        Json doc = envelope("betti");
        doc["field"] = field.name();
        doc["complex"] = complex_to_json(k);
        doc["betti"] = betti_to_json(table);
        std::ostringstream text;
        text << format_betti_table(table) << "total degrees: " << dims_to_text(dims) << "\n"
             << "Poincare series: " << format_poincare_series(dims) << "\n";

        if (config.multigraded) {
          const auto ghosts = ghost_vertex_contributions(k, table);
          Json refined = Json::array();
          text << "multigraded:\n";
          for (const auto& [key, dim] : table.refined()) {
            const bool ghost = std::find(ghosts.begin(), ghosts.end(), key) != ghosts.end();
            refined.push_back(
                {{"i", -key.first}, {"subset", vertex_set_to_json(key.second)}, {"dim", dim}, {"ghost", ghost}});
            text << "  (" << -key.first << ", " << key.second.to_string() << "): " << dim
                 << (ghost ? "  [ghost vertex]" : "") << "\n";
          }
          doc["multigraded"] = refined;
        }

        int code = exit_ok;
        if (config.nonsquarefree_bound) {
          const auto violations = nonsquarefree_violations(k, field, *config.nonsquarefree_bound, config.threads);
          doc["nonsquarefree"] = {{"bound", *config.nonsquarefree_bound}, {"violations", violations.size()}};
          text << "non-squarefree strands up to degree " << *config.nonsquarefree_bound << ": "
               << (violations.empty() ? "all acyclic" : std::to_string(violations.size()) + " with cohomology") << "\n";
          if (!violations.empty()) code = exit_verification;
        }
        emit(config, doc, text.str());
        return code;
      },
      parse_field(config.field()));
}

int cmd_verify(const RunConfig& config) {
  std::vector<std::pair<std::string, SimplicialComplex>> targets;
  for (const auto& path : config.inputs) targets.emplace_back(path, load_complex(path));
  if (config.corpus)
    for (auto& fixture : fixture_corpus()) targets.emplace_back(fixture.name, std::move(fixture.complex));
  if (targets.empty()) throw Error(ErrorCode::invalid_input, "verify needs input files or --corpus");

  VerifyOptions options;
  if (!config.fields.empty()) {
    options.fields.clear();
    for (const auto& f : config.fields) options.fields.push_back(parse_field(f));
  }
  options.threads = config.threads;

  Json doc = envelope("verify");
  Json results = Json::array();
  std::ostringstream text;
  std::size_t passed = 0;
  for (const auto& [name, k] : targets) {
    const int m = k.vertex_count();
    // Non-squarefree strands grow quickly with m; by default only small complexes are checked.
    options.nonsquarefree_bound = config.nonsquarefree_bound;
    if (!options.nonsquarefree_bound && m <= 6) options.nonsquarefree_bound = m + 2;
    options.inject_fault.reset();
    if (config.inject_fault) options.inject_fault = SignFlip{Multidegree(std::size_t(m), 1), 2, 0, 0};
    const VerifyReport report = verify_complex(k, options);
    if (report.ok()) ++passed;
    Json entry = verify_to_json(report);
    entry["name"] = name;
    results.push_back(std::move(entry));
    text << name << ": " << (report.ok() ? "PASS" : "FAIL") << "\n" << verify_to_text(report);
  }
  doc["results"] = results;
  doc["passed"] = passed;
  doc["total"] = targets.size();
  text << passed << "/" << targets.size() << " complexes passed\n";
  emit(config, doc, text.str());
  return passed == targets.size() ? exit_ok : exit_verification;
}

template <ExactField F>
Json coords_to_json(const F& field, const std::vector<typename F::value_type>& coords) {
  Json out = Json::array();
  for (std::size_t c = 0; c < coords.size(); ++c)
    if (!field.is_zero(coords[c])) out.push_back({{"class", c}, {"coeff", field.to_string(coords[c])}});
  return out;
}

template <ExactField F>
std::string coords_to_text(const F& field, const std::vector<typename F::value_type>& coords) {
  std::string s;
  for (std::size_t c = 0; c < coords.size(); ++c) {
    if (field.is_zero(coords[c])) continue;
    if (!s.empty()) s += " + ";
    s += "(" + field.to_string(coords[c]) + ")[" + std::to_string(c) + "]";
  }
  return s.empty() ? "0" : s;
}

int cmd_ring(const RunConfig& config) {
  const SimplicialComplex k = single_input(config);
  return std::visit(
      [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        const auto basis = CohomologyBasis<F>::compute(k, field, config.threads);
        Json doc = envelope("ring");
        doc["field"] = field.name();
        doc["complex"] = complex_to_json(k);
        std::ostringstream text;
        Json classes = Json::array();
        text << basis.size() << " basis classes\n";
        int top = 0;
        for (std::size_t c = 0; c < basis.size(); ++c) {
          const auto& cls = basis.classes()[c];
          top = std::max(top, cls.total_degree());
          classes.push_back({{"index", c},
                             {"degree", cls.total_degree()},
                             {"bidegree", {-cls.i, 2 * cls.j}},
                             {"subset", vertex_set_to_json(cls.subset)},
                             {"representative", cls.representative.to_string()}});
          text << "  [" << c << "] deg " << cls.total_degree() << " bideg (" << -cls.i << "," << 2 * cls.j << ") I "
               << cls.subset.to_string() << ": " << cls.representative.to_string() << "\n";
        }
        doc["classes"] = classes;

        const int lo = config.min_degree.value_or(0);
        const int hi = config.max_degree.value_or(top);
        const auto products = structure_constants(basis, lo, hi, config.threads);
        Json nonzero = Json::array();
        text << "nonzero products of classes in degrees " << lo << ".." << hi << ":\n";
        for (const auto& [pair, coords] : products) {
          const Json c = coords_to_json(field, coords);
          if (c.empty()) continue;
          nonzero.push_back({{"left", pair.first}, {"right", pair.second}, {"product", c}});
          text << "  [" << pair.first << "]*[" << pair.second << "] = " << coords_to_text(field, coords) << "\n";
        }
        doc["products"] = {{"min_degree", lo}, {"max_degree", hi}, {"nonzero", nonzero}};

        Json monomials = Json::array();
        for (const auto& text_form : config.monomials) {
          const KoszulMonomial mono = KoszulMonomial::parse(text_form, k.vertex_count());
          const MonomialVerdict verdict = monomial_class_filter(k, mono);
          Json entry{{"monomial", mono.to_string()}, {"verdict", to_string(verdict)}};
          text << mono.to_string() << ": " << to_string(verdict);
          if (verdict == MonomialVerdict::non_face_support) {
            entry["cocycle"] = false;
            text << " (zero in the face ring)\n";
          } else {
            const auto z = Cochain<F>::monomial(field, mono);
            const bool cocycle = koszul_differential(z, k).is_zero();
            entry["cocycle"] = cocycle;
            if (cocycle) {
              const auto coords = basis.reduce(z);
              entry["class"] = coords_to_json(field, coords);
              text << ", class " << coords_to_text(field, coords) << "\n";
            } else {
              text << ", not a cocycle\n";
            }
          }
          monomials.push_back(std::move(entry));
        }
        if (!config.monomials.empty()) doc["monomials"] = monomials;
        emit(config, doc, text.str());
        return exit_ok;
      },
      parse_field(config.field()));
}

int cmd_pd(const RunConfig& config) {
  const SimplicialComplex k = single_input(config);
  return std::visit(
      [&](const auto& field) {
        const PoincareReport r = poincare_check(k, field, config.threads);
        Json doc = envelope("pd");
        doc["field"] = field.name();
        doc["complex"] = complex_to_json(k);
        Json pairings = Json::array();
        for (const auto& p : r.pairings)
          pairings.push_back({{"degree", p.degree},
                              {"dual_degree", p.dual_degree},
                              {"rows", p.rows},
                              {"cols", p.cols},
                              {"rank", p.rank},
                              {"nondegenerate", p.nondegenerate()}});
        std::size_t flips_ok = 0;
        for (const auto& f : r.flips) flips_ok += f.equal ? 1 : 0;
        doc["m"] = r.m;
        doc["n"] = r.n;
        doc["table_symmetric"] = r.table_symmetric;
        doc["top_dimension"] = r.top_dimension;
        doc["pairings"] = pairings;
        doc["flips"] = {{"checked", r.flips.size()}, {"equal", flips_ok}};
        doc["top_monomials_agree"] = r.top_monomials_agree;
        doc["ok"] = r.ok();

        std::ostringstream text;
        text << "homology sphere of dimension " << r.n - 1 << " on " << r.m << " vertices over " << field.name() << "\n"
             << "table symmetry: " << (r.table_symmetric ? "yes" : "NO") << "\n"
             << "top degree " << r.m + r.n << " dimension: " << r.top_dimension << "\n";
        for (const auto& p : r.pairings)
          text << "  pairing H^" << p.degree << " x H^" << p.dual_degree << ": " << p.rows << "x" << p.cols << ", rank "
               << p.rank << (p.nondegenerate() ? "" : "  DEGENERATE") << "\n";
        text << "flip relations: " << flips_ok << "/" << r.flips.size() << " hold\n"
             << "facet top monomials agree up to sign: " << (r.top_monomials_agree ? "yes" : "NO") << "\n"
             << (r.ok() ? "ok" : "FAILED") << "\n";
        emit(config, doc, text.str());
        return r.ok() ? exit_ok : exit_verification;
      },
      parse_field(config.field()));
}

template <ExactField F>
LsopCandidate<F> parse_lambda(const F& field, const std::string& text, int m) {
  LsopCandidate<F> candidate{field, m, {}};
  std::istringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::istringstream entries(row);
    std::string entry;
    std::vector<typename F::value_type> values;
    while (std::getline(entries, entry, ',')) {
      try {
        std::size_t used = 0;
        const long v = std::stol(entry, &used);
        if (entry.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(entry);
        values.push_back(field.from_int(v));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::invalid_input, "cannot read l.s.o.p. entry '" + entry + "'");
      }
    }
    candidate.rows.push_back(std::move(values));
  }
  return candidate;
}

int cmd_lsop(const RunConfig& config) {
  const SimplicialComplex k = single_input(config);
  return std::visit(
      [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        Json doc = envelope("lsop");
        doc["field"] = field.name();
        doc["complex"] = complex_to_json(k);
        std::ostringstream text;
        if constexpr (!is_rationals_v<F>) {
          const auto f = k.f_vector();
          std::uint64_t faces = 0;
          for (auto c : f) faces += c;
          if (field.characteristic() <= faces)
            throw Error(ErrorCode::invalid_field, "characteristic " + std::to_string(field.characteristic()) +
                                                      " is too small for a random l.s.o.p. (needs > " +
                                                      std::to_string(faces) + ")");
          std::cerr << "warning: regularity over " << field.name()
                    << " is certified by the Hilbert series, but random candidates fail more often than over q\n";
        }
        std::optional<LsopCandidate<F>> candidate;
        LsopReport report;
        if (!config.lambda.empty()) {
          candidate = parse_lambda(field, config.lambda, k.vertex_count());
          report = lsop_reduction(k, *candidate, config.multigraded, config.threads);
        } else {
          auto [c, r] = lsop_search(k, field, config.seed, config.attempts, config.multigraded, config.threads);
          candidate = std::move(c);
          report = std::move(r);
        }
        Json rows = Json::array();
        for (const auto& row : candidate->rows) {
          Json r = Json::array();
          for (const auto& x : row) r.push_back(field.to_string(x));
          rows.push_back(r);
        }
        doc["lsop"] = rows;
        doc["regular"] = report.regular;
        doc["quotient_dims"] = report.quotient_dims;
        doc["expected_dims"] = report.expected_dims;
        text << "l.s.o.p. rows:";
        for (const auto& row : candidate->rows) {
          text << " [";
          for (std::size_t t = 0; t < row.size(); ++t) text << (t ? " " : "") << field.to_string(row[t]);
          text << "]";
        }
        text << "\nquotient dims by degree:";
        for (auto d : report.quotient_dims) text << " " << d;
        text << "\nexpected from Hilbert series:";
        for (auto d : report.expected_dims) text << " " << d;
        text << "\n";
        int code = exit_ok;
        if (!report.regular) {
          doc["first_failing_degree"] = *report.first_failing_degree;
          text << "not regular: first failing degree " << *report.first_failing_degree << "\n";
        } else {
          doc["total_degree_dims"] = dims_to_json(report.total_degree_dims);
          doc["koszul_total_degree_dims"] = dims_to_json(report.koszul_total_degree_dims);
          doc["matches_koszul"] = report.matches_koszul;
          text << "regular\nreduced complex total degrees: " << dims_to_text(report.total_degree_dims) << "\n"
               << "Koszul total degrees:          " << dims_to_text(report.koszul_total_degree_dims) << "\n"
               << (report.matches_koszul ? "match" : "MISMATCH") << "\n";
          if (report.bigraded_matches_koszul) {
            doc["bigraded_matches_koszul"] = *report.bigraded_matches_koszul;
            text << "bigraded comparison (experimental): " << (*report.bigraded_matches_koszul ? "match" : "differs")
                 << "\n";
          }
          if (!report.matches_koszul) code = exit_verification;
        }
        emit(config, doc, text.str());
        return code;
      },
      parse_field(config.field()));
}

int cmd_dual(const RunConfig& config) {
  const SimplicialComplex k = single_input(config);
  const Json dual = complex_to_json(dual_complex(k));
  Json doc = envelope("dual");
  doc["complex"] = complex_to_json(k);
  doc["dual"] = dual;
  emit(config, doc, dual.dump() + "\n");
  return exit_ok;
}

int cmd_arr(const RunConfig& config) {
  if (config.inputs.size() != 1) throw Error(ErrorCode::invalid_input, "arr takes exactly one input file");
  const nlohmann::json input = read_json_file(config.inputs.front());
  Json doc = envelope("arr");
  if (input.is_object() && input.contains("generators")) {
    const Arrangement a = arrangement_from_json(input);
    const StrippedArrangement stripped = strip_hyperplanes(a);
    const Json complex = complex_to_json(arrangement_to_complex(stripped.arrangement));
    doc["arrangement"] = arrangement_to_json(a);
    doc["stripped_hyperplanes"] = stripped.hyperplanes;
    doc["complex"] = complex;
    std::string text;
    if (stripped.hyperplanes > 0)
      text = "stripped " + std::to_string(stripped.hyperplanes) + " coordinate hyperplane(s)\n";
    emit(config, doc, text + complex.dump() + "\n");
  } else {
    const SimplicialComplex k = complex_from_json(input);
    const Json arrangement = arrangement_to_json(complex_to_arrangement(k));
    doc["complex"] = complex_to_json(k);
    doc["arrangement"] = arrangement;
    emit(config, doc, arrangement.dump() + "\n");
  }
  return exit_ok;
}

int cmd_euler(const RunConfig& config) {
  const SimplicialComplex k = single_input(config);
  return std::visit(
      [&](const auto& field) {
        const long moment_angle = moment_angle_euler(k);
        const long cubical = cubical_euler(k);
        const long cohomology = euler_characteristic(
            total_degree_dims(betti_table(k, field, KoszulOptions{std::nullopt, config.threads, std::nullopt})));
        const bool ok = moment_angle == cohomology && cubical == 1;
        Json doc = envelope("euler");
        doc["field"] = field.name();
        doc["complex"] = complex_to_json(k);
        doc["moment_angle_euler"] = moment_angle;
        doc["cubical_euler"] = cubical;
        doc["cohomology_euler"] = cohomology;
        doc["ok"] = ok;
        std::ostringstream text;
        text << "moment-angle complex: " << moment_angle << "\ncubical complex: " << cubical
             << "\nalternating sum of cohomology: " << cohomology << "\n"
             << (ok ? "ok" : "FAILED") << "\n";
        emit(config, doc, text.str());
        return ok ? exit_ok : exit_verification;
      },
      parse_field(config.field()));
}

int cmd_random(const RunConfig& config) {
  const Json complex = complex_to_json(random_complex(config.m, config.density, config.seed));
  Json doc = envelope("random");
  doc["m"] = config.m;
  doc["density"] = config.density;
  doc["seed"] = config.seed;
  doc["complex"] = complex;
  emit(config, doc, complex.dump() + "\n");
  return exit_ok;
}

int run(const RunConfig& config) {
  if (config.command == "betti") return cmd_betti(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "ring") return cmd_ring(config);
  if (config.command == "pd") return cmd_pd(config);
  if (config.command == "lsop") return cmd_lsop(config);
  if (config.command == "dual") return cmd_dual(config);
  if (config.command == "arr") return cmd_arr(config);
  if (config.command == "euler") return cmd_euler(config);
  if (config.command == "random") return cmd_random(config);
  throw Error(ErrorCode::invalid_input, "unknown command " + config.command);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"Betti tables and cohomology rings of face rings"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool multiple_fields) {
    if (multiple_fields)
      sub->add_option("--field", config.fields, "q or fp:<p>; repeat for several fields (default q, fp:2, fp:3)")
          ->allow_extra_args(false);
    else
      sub->add_option("--field", config.fields, "q or fp:<p> (default q)")->expected(1);
    sub->add_option("--format", config.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", config.inputs, "complex JSON file")->required(); };

  auto* betti = app.add_subcommand("betti", "bigraded Betti table and total-degree dimensions");
  add_input(betti);
  add_common(betti, false);
  betti->add_flag("--multigraded", config.multigraded, "also list contributions per vertex subset");
  betti
      ->add_option("--verify-nonsquarefree", config.nonsquarefree_bound,
                   "check non-squarefree strands up to this degree")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "cross-check the Koszul and full-subcomplex pipelines");
  verify->add_option("input", config.inputs, "complex JSON files");
  verify->add_flag("--corpus", config.corpus, "also run the built-in fixture corpus");
  verify
      ->add_option("--verify-nonsquarefree", config.nonsquarefree_bound,
                   "non-squarefree degree bound (default m+2 for m <= 6, skipped above)")
      ->check(CLI::NonNegativeNumber);
  verify->add_flag("--inject-fault", config.inject_fault, "self-test: negate one Koszul differential entry");
  add_common(verify, true);

  auto* ring = app.add_subcommand("ring", "cohomology basis and products");
  add_input(ring);
  add_common(ring, false);
  ring->add_option("--min-degree", config.min_degree, "lowest total degree for products")
      ->check(CLI::NonNegativeNumber);
  ring->add_option("--max-degree", config.max_degree, "highest total degree for products")
      ->check(CLI::NonNegativeNumber);
  ring->add_option("--monomial", config.monomials, "classify and reduce a monomial such as \"v1 u3\"")
      ->allow_extra_args(false);

  auto* pd = app.add_subcommand("pd", "Poincare duality checks for homology spheres");
  add_input(pd);
  add_common(pd, false);

  auto* lsop = app.add_subcommand("lsop", "reduction by a linear system of parameters");
  add_input(lsop);
  add_common(lsop, false);
  lsop->add_option("--seed", config.seed, "first seed for random candidates");
  lsop->add_option("--attempts", config.attempts, "random candidates to try")->check(CLI::PositiveNumber);
  lsop->add_option("--lambda", config.lambda, "explicit rows, e.g. \"1,0,-1;0,1,-1\"");
  lsop->add_flag("--multigraded", config.multigraded, "also compare bidegrees (experimental)");

  auto* dual = app.add_subcommand("dual", "dual complex");
  add_input(dual);
  dual->add_option("--format", config.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* arr = app.add_subcommand("arr", "convert between complexes and coordinate arrangements");
  add_input(arr);
  arr->add_option("--format", config.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* euler = app.add_subcommand("euler", "Euler characteristics");
  add_input(euler);
  add_common(euler, false);

  auto* random = app.add_subcommand("random", "reproducible random complex");
  random->add_option("--m", config.m, "number of vertices")->check(CLI::Range(0, max_vertices));
  random->add_option("--density", config.density, "vertex inclusion probability")->check(CLI::Range(0.0, 1.0));
  random->add_option("--seed", config.seed, "random seed");
  random->add_option("--format", config.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    return run(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::verification_failed ? exit_verification : exit_input;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_verification;
  }
}
