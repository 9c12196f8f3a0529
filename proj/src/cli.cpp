#include "infoax/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoax/axioms.hpp"
#include "infoax/errors.hpp"
#include "infoax/io.hpp"
#include "infoax/markov.hpp"
#include "infoax/measures.hpp"

namespace infoax::cli {

using nlohmann::json;

double round_significant(double v, int digits) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // drop -0
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", round_significant(v));
  return buf;
}

json number_json(double v) {
  return std::isfinite(v) ? json(round_significant(v)) : json(nullptr);
}

std::vector<std::string> split_names(const std::string& list, std::size_t expected,
                                     const std::string& flag) {
  std::vector<std::string> names;
  std::stringstream ss(list);
  for (std::string part; std::getline(ss, part, ',');) names.push_back(part);
  if (names.size() != expected) {
    throw ValidationError(flag + ": expected " + std::to_string(expected) +
                          " comma-separated variable names, got '" + list + "'");
  }
  return names;
}

double parse_base(const std::string& base) {
  if (base == "2") return 2.0;
  if (base == "10") return 10.0;
  return std::numbers::e;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string file;
  std::string pair;
  std::string base = "2";
  std::string format = "json";
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
  const auto doc = io::parse_document(io::read_json_file(a.file));
  std::vector<std::string> names;
  if (!a.pair.empty()) {
    names = split_names(a.pair, 2, "--pair");
  } else if (doc.joint) {
    names = doc.joint_names;
  } else if (doc.variables.size() == 2) {
    for (const auto& [name, v] : doc.variables) names.push_back(name);
  } else {
    throw ValidationError("--pair: required when the document does not define exactly two variables");
  }
  const auto& x = doc.variable(names[0]);
  const auto& y = doc.variable(names[1]);
  const double base = parse_base(a.base);

  const std::vector<std::pair<std::string, double>> measures{
      {"H(" + names[0] + ")", entropy(x, base)},
      {"H(" + names[1] + ")", entropy(y, base)},
      {"H(" + names[0] + "," + names[1] + ")", joint_entropy(x, y, base)},
      {"H(" + names[1] + "|" + names[0] + ")", conditional_entropy(x, y, base)},
      {"H(" + names[0] + "|" + names[1] + ")", conditional_entropy(y, x, base)},
      {"I(" + names[0] + "," + names[1] + ")", mutual_information(x, y, base)},
  };

  if (a.format == "text") {
    out << "pair " << names[0] << "," << names[1] << "  base " << a.base << '\n';
    for (const auto& name : names) {
      out << "p(" << name << "):";
      for (const auto& [label, mass] : pmf(doc.variable(name))) out << ' ' << label << '=' << mass;
      out << '\n';
    }
    for (const auto& [label, value] : measures) out << label << " = " << format_number(value) << '\n';
    return kOk;
  }

  json m = json::object();
  for (const auto& [label, value] : measures) m[label] = number_json(value);
  emit(out, json{{"version", io::kSchemaVersion},
                 {"pair", names},
                 {"base", a.base},
                 {"pmfs", {{names[0], io::pmf_json(pmf(x))}, {names[1], io::pmf_json(pmf(y))}}},
                 {"joint", io::joint_json(joint_table(x, y))},
                 {"measures", std::move(m)}});
  return kOk;
}

// --- triangle --------------------------------------------------------------

struct TriangleArgs {
  std::string file;
  std::string vars = "X,Y,Z";
  bool emit_mediator = false;
};

int cmd_triangle(const TriangleArgs& a, std::ostream& out) {
  const auto doc = io::parse_document(io::read_json_file(a.file));
  const auto names = split_names(a.vars, 3, "--vars");
  const Triple t(doc.variable(names[0]), doc.variable(names[1]), doc.variable(names[2]));
  const auto h = find_mediator(t);
  json report{{"version", io::kSchemaVersion},
              {"vars", names},
              {"is_markov_triangle", h.has_value()},
              {"weak_functoriality_residual", number_json(weak_functoriality_residual(t))},
              {"chain_rule_residual", number_json(chain_rule_residual(t))}};
  if (a.emit_mediator) report["mediator"] = h ? io::mediator_json(*h) : json(nullptr);
  emit(out, report);
  return kOk;
}

// --- audit -----------------------------------------------------------------

struct AuditArgs {
  std::string functional;
  bool all = false;
  std::uint64_t seed = kDefaultSeed;
  std::size_t instances = kDefaultInstances;
  double tol = 1e-9;
  std::optional<double> continuity_tol;
  std::string out_file;
};

int cmd_audit(const AuditArgs& a, std::ostream& out) {
  std::vector<CandidateFunctional> targets;
  if (a.all) {
    targets = builtin_functionals();
  } else if (a.functional.empty()) {
    throw ValidationError("audit: one of --functional or --all is required");
  } else if (auto f = find_functional(a.functional)) {
    targets.push_back(std::move(*f));
  } else {
    std::string known;
    for (const auto& f : builtin_functionals()) known += (known.empty() ? "" : ", ") + f.name;
    throw ValidationError("--functional: unknown functional '" + a.functional + "' (known: " + known + ")");
  }

  AuditOptions options;
  options.tolerance = a.tol;
  if (a.continuity_tol) options.continuity_tolerance = *a.continuity_tol;
  const auto corpus = standard_corpus(a.seed, a.instances);

  json results = json::array();
  bool all_passed = true;
  for (const auto& f : targets) {
    const auto result = audit(f, corpus, options);
    all_passed = all_passed && result.axioms_pass();
    results.push_back(to_json(result));
  }
  const json report{{"version", io::kSchemaVersion},
                    {"seed", a.seed},
                    {"instances_per_axiom", a.instances},
                    {"tolerance", options.tolerance},
                    {"continuity_tolerance", options.continuity_tolerance},
                    {"probe_tolerance", options.probe_tolerance},
                    {"probe_indices", options.probe_indices},
                    {"results", std::move(results)}};
  if (a.out_file.empty()) {
    emit(out, report);
  } else {
    std::ofstream file(a.out_file);
    if (!file) throw ValidationError("--out: cannot open '" + a.out_file + "' for writing");
    emit(file, report);
    for (const auto& r : report["results"]) {
      out << r["functional"].get<std::string>() << ": "
          << (r["failed_axioms"].empty() ? std::string("all axioms pass")
                                         : "failed axioms " + r["failed_axioms"].dump())
          << ", probe " << (r["probe"]["passed"].get<bool>() ? "pass" : "fail") << '\n';
    }
  }
  return all_passed ? kOk : kAxiomFailed;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string kind = "pair";
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 1;
  std::string family;
  bool rejection = false;
};

json pair_document(const FiniteRandomVariable& x, const FiniteRandomVariable& y) {
  return io::to_json(io::make_document({{"X", x}, {"Y", y}}));
}

json triangle_json(const Triple& t, std::optional<TriangleFamily> family) {
  const auto h = find_mediator(t);
  return json{{"family", family ? json(family_name(*family)) : json("rejection")},
              {"document", io::to_json(io::make_document({{"X", t.x()}, {"Y", t.y()}, {"Z", t.z()}}))},
              {"mediator", h ? io::mediator_json(*h) : json(nullptr)}};
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  std::optional<TriangleFamily> family;
  if (!a.family.empty()) {
    family = parse_family(a.family);
    if (!family) throw ValidationError("--family: unknown triangle family '" + a.family + "'");
    if (a.kind != "triangle") throw ValidationError("--family: only valid with --kind triangle");
  }
  if (a.rejection && a.kind != "triangle") {
    throw ValidationError("--rejection: only valid with --kind triangle");
  }

  InstanceGenerator gen(a.seed);
  json instances = json::array();
  for (std::size_t i = 0; i < a.count; ++i) {
    if (a.kind == "pair") {
      const auto p = gen.pair();
      instances.push_back({{"document", pair_document(p.x, p.y)}});
    } else if (a.kind == "mixture") {
      const auto m = gen.mixture();
      json members = json::object();
      for (const auto& [label, yz] : m.family) {
        members[label] = io::to_json(io::make_document({{"Y", yz.first}, {"Z", yz.second}}));
      }
      instances.push_back({{"weights", io::pmf_json(m.weights)}, {"family", std::move(members)}});
    } else if (a.kind == "pullback") {
      const auto p = gen.pullback();
      instances.push_back({{"document", pair_document(p.x, p.y)}, {"map", io::map_json(p.map)}});
    } else if (a.kind == "sequence") {
      instances.push_back(io::to_json(gen.sequence()));
    } else if (a.rejection) {
      const auto t = generate_triangle_by_rejection(a.seed + i, gen.bounds());
      instances.push_back(t ? triangle_json(*t, std::nullopt) : json(nullptr));
    } else {
      const auto f = family.value_or(static_cast<TriangleFamily>(gen.uniform(0, 3)));
      instances.push_back(triangle_json(generate_markov_triangle(gen, f).triple, f));
    }
  }
  emit(out, json{{"version", io::kSchemaVersion},
                 {"kind", a.kind},
                 {"seed", a.seed},
                 {"instances", std::move(instances)}});
  return kOk;
}

// --- converge --------------------------------------------------------------

struct ConvergeArgs {
  std::string file;
  std::uint64_t n = 1000;
  double tol = 1e-6;
};

int cmd_converge(const ConvergeArgs& a, std::ostream& out) {
  const auto inst = io::parse_sequence(io::read_json_file(a.file));
  const auto limit = inst.limit();
  const auto report = check_weak_convergence(inst.sequence(), limit, a.tol, a.n);
  json probes = json::array();
  for (const auto& p : report.probes) {
    probes.push_back({{"n", p.n},
                      {"max_deviation", io::rational_json(p.max_deviation)},
                      {"entropy_gap", number_json(p.entropy_gap)},
                      {"information_gap",
                       p.information_gap ? number_json(*p.information_gap) : json(nullptr)}});
  }
  emit(out, json{{"version", io::kSchemaVersion},
                 {"limit", io::joint_json(limit)},
                 {"tolerance", a.tol},
                 {"within_tolerance", report.within_tolerance},
                 {"monotone", report.monotone},
                 {"probes", std::move(probes)}});
  return report.within_tolerance ? kOk : kAxiomFailed;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact information measures, Markov triangles and axiom audits for finite random variables",
               "infoax"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Entropies and mutual information of a pair of variables");
  c->add_option("file", compute.file, "Instance document (\"-\" for stdin)")->required();
  c->add_option("--pair", compute.pair, "Variable names X,Y");
  c->add_option("--base", compute.base, "Logarithm base")->check(CLI::IsMember({"2", "e", "10"}));
  c->add_option("--format", compute.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  TriangleArgs triangle;
  auto* t = app.add_subcommand("triangle", "Search a mediator function for a triple of variables");
  t->add_option("file", triangle.file, "Instance document (\"-\" for stdin)")->required();
  t->add_option("--vars", triangle.vars, "Variable names X,Y,Z");
  t->add_flag("--emit-mediator", triangle.emit_mediator, "Include the (z,x) -> y table");

  AuditArgs audit_args;
  auto* au = app.add_subcommand("audit", "Check a candidate functional against the six axioms");
  auto* fn = au->add_option("--functional", audit_args.functional, "Built-in functional name");
  auto* all = au->add_flag("--all", audit_args.all, "Audit every built-in functional");
  fn->excludes(all);
  au->add_option("--seed", audit_args.seed, "Corpus seed");
  au->add_option("--instances", audit_args.instances, "Random instances per axiom")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  au->add_option("--tol", audit_args.tol, "Tolerance for identity checks")
      ->check(CLI::PositiveNumber);
  au->add_option("--continuity-tol", audit_args.continuity_tol, "Tolerance for continuity probing")
      ->check(CLI::PositiveNumber);
  au->add_option("--out", audit_args.out_file, "Write the report here instead of stdout");

  GenerateArgs generate;
  auto* g = app.add_subcommand("generate", "Emit a seeded corpus of instances");
  g->add_option("--kind", generate.kind, "Instance kind")
      ->check(CLI::IsMember({"pair", "triangle", "mixture", "pullback", "sequence"}));
  g->add_option("--seed", generate.seed, "Generator seed");
  g->add_option("--count", generate.count, "Number of instances")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  g->add_option("--family", generate.family, "Triangle family (canonical_product, relabeled_input, "
                                             "relabeled_output, deterministic_chain)");
  g->add_flag("--rejection", generate.rejection, "Sample triples at random until one is a triangle");

  ConvergeArgs converge;
  auto* cv = app.add_subcommand("converge", "Probe a pair-sequence descriptor for convergence");
  cv->add_option("file", converge.file, "Sequence descriptor (\"-\" for stdin)")->required();
  cv->add_option("--n", converge.n, "First probe index")->check(CLI::PositiveNumber);
  cv->add_option("--tol", converge.tol, "Deviation tolerance at the first probe")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (c->parsed()) return cmd_compute(compute, out);
    if (t->parsed()) return cmd_triangle(triangle, out);
    if (au->parsed()) return cmd_audit(audit_args, out);
    if (g->parsed()) return cmd_generate(generate, out);
    if (cv->parsed()) return cmd_converge(converge, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("infoax");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace infoax::cli
