#include "infoax/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infoax/errors.hpp"
#include "infoax/io.hpp"

namespace infoax {

using nlohmann::json;

namespace {

// Keeps the worst residual seen and the counterexample that produced it.
class ResidualTracker {
 public:
  ResidualTracker(Axiom axiom, double tol) {
    report_.axiom = axiom;
    report_.tolerance = tol;
  }

  template <typename Describe>
  void add(double residual, Describe&& describe) {
    ++report_.instances_tested;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    if (residual > report_.max_residual || report_.instances_tested == 1) {
      report_.max_residual = std::max(report_.max_residual, residual);
      if (residual > report_.tolerance && residual >= report_.max_residual) {
        report_.counterexample = describe();
        (*report_.counterexample)["residual"] = json_number(residual);
      }
    }
  }

  AxiomReport finish(std::string note = {}) {
    report_.note = std::move(note);
    return std::move(report_);
  }

  static json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

 private:
  AxiomReport report_;
};

json pair_document(const std::string& a, const FiniteRandomVariable& x, const std::string& b,
                   const FiniteRandomVariable& y) {
  return io::to_json(io::make_document({{a, x}, {b, y}}));
}

FiniteRandomVariable fair_coin() {
  return canonical_variable(Pmf{{"0", Rational(1, 2)}, {"1", Rational(1, 2)}});
}

}  // namespace

std::string_view axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::continuity: return "continuity";
    case Axiom::strong_additivity: return "strong_additivity";
    case Axiom::symmetry: return "symmetry";
    case Axiom::pullback_invariance: return "pullback_invariance";
    case Axiom::weak_functoriality: return "weak_functoriality";
    case Axiom::vacuity: return "vacuity";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Corpus

AuditCorpus standard_corpus(std::uint64_t seed, std::size_t per_axiom, const CorpusBounds& bounds) {
  AuditCorpus corpus;
  corpus.seed = seed;
  InstanceGenerator gen(seed, bounds);

  const auto coin_space = uniform_space(2);
  const auto coin = FiniteRandomVariable::identity(coin_space);
  const auto coin_const = FiniteRandomVariable::constant(coin_space);
  const auto four = uniform_space(4);
  const FiniteRandomVariable left(four, std::vector<Label>{"h", "h", "t", "t"});
  const FiniteRandomVariable right(four, std::vector<Label>{"h", "t", "h", "t"});
  // H(Y|X) != H(X|Y) here.
  const auto three = make_space({"w1", "w2", "w3"}, {Rational(1, 6), Rational(1, 3), Rational(1, 2)});
  const FiniteRandomVariable three_x(three, std::vector<Label>{"a", "a", "b"});
  const FiniteRandomVariable three_y(three, std::vector<Label>{"u", "v", "v"});

  // δ_n = 1/(4n) on a symmetric binary table: I_n > 0 = I.
  SequenceInstance decorrelating;
  decorrelating.rows = {"0", "1"};
  decorrelating.cols = {"0", "1"};
  const Rational q(1, 4);
  decorrelating.cells = {InversePolynomial({q, q}), InversePolynomial({q, -q}),
                         InversePolynomial({q, -q}), InversePolynomial({q, q})};
  decorrelating.stabilization_index = 1;
  corpus.sequences.push_back(decorrelating);
  for (std::size_t i = 0; i < per_axiom; ++i) corpus.sequences.push_back(gen.sequence());

  corpus.mixtures.push_back(MixtureInstance{
      Pmf{{"0", Rational(1, 2)}, {"1", Rational(1, 2)}},
      {{"0", VariablePair{coin, coin}}, {"1", VariablePair{coin_const, coin_const}}}});
  for (std::size_t i = 0; i < per_axiom; ++i) corpus.mixtures.push_back(gen.mixture());

  corpus.pairs.push_back(PairInstance{three_x, three_y});
  corpus.pairs.push_back(PairInstance{left, right});
  corpus.pairs.push_back(PairInstance{coin, coin});
  for (std::size_t i = 0; i < per_axiom; ++i) corpus.pairs.push_back(gen.pair());

  corpus.pullbacks.push_back(PullbackInstance{three_x, three_y, halving_refinement(three)});
  for (std::size_t i = 0; i < per_axiom; ++i) corpus.pullbacks.push_back(gen.pullback());

  corpus.triangles.push_back(GeneratedTriangle{
      TriangleFamily::canonical_product, Triple(left, canonical_product(left, right), right)});
  corpus.triangles.push_back(GeneratedTriangle{
      TriangleFamily::canonical_product,
      Triple(three_x, canonical_product(three_x, three_y), three_y)});
  for (std::size_t i = 0; i < per_axiom; ++i) {
    corpus.triangles.push_back(generate_markov_triangle(gen, static_cast<TriangleFamily>(i % 4)));
  }

  corpus.vacuity.push_back(VacuityInstance{coin, coin_const});
  corpus.vacuity.push_back(VacuityInstance{coin_const, coin_const});
  for (std::size_t i = 0; i < per_axiom; ++i) {
    auto s = gen.space();
    auto x = gen.variable(s, "x");
    corpus.vacuity.push_back(VacuityInstance{x, FiniteRandomVariable::constant(s, "c")});
  }
  return corpus;
}

// ---------------------------------------------------------------------------
// Axiom checks

AxiomReport check_continuity(const CandidateFunctional& f, std::span<const SequenceInstance> seqs,
                             double tol, std::span<const std::uint64_t> probe_indices) {
  ResidualTracker tracker(Axiom::continuity, tol);
  for (const auto& inst : seqs) {
    const auto [lx, ly] = coordinate_variables(inst.limit());
    const double at_limit = f(lx, ly);
    const auto seq = inst.sequence();
    std::vector<double> gaps;
    for (std::uint64_t n : probe_indices) {
      const auto [xn, yn] = coordinate_variables(seq.generator(std::max(n, inst.stabilization_index)));
      gaps.push_back(std::abs(at_limit - f(xn, yn)));
    }
    double residual = gaps.empty() ? 0.0 : gaps.back();
    for (std::size_t k = 1; k < gaps.size(); ++k) residual = std::max(residual, gaps[k] - gaps[k - 1]);
    tracker.add(residual, [&] {
      json gaps_json = json::array();
      for (double g : gaps) gaps_json.push_back(ResidualTracker::json_number(g));
      return json{{"sequence", io::to_json(inst)},
                  {"probe_indices", std::vector<std::uint64_t>(probe_indices.begin(), probe_indices.end())},
                  {"gaps", std::move(gaps_json)},
                  {"value_at_limit", ResidualTracker::json_number(at_limit)}};
    });
  }
  return tracker.finish("finite probing; can falsify but not establish continuity");
}

AxiomReport check_strong_additivity(const CandidateFunctional& f,
                                    std::span<const MixtureInstance> mixtures, double tol) {
  ResidualTracker tracker(Axiom::strong_additivity, tol);
  for (const auto& inst : mixtures) {
    const auto [ysum, zsum] = convex_sum_pairs(inst.weights, inst.family);
    const double lhs = f(ysum, zsum);
    const auto x = canonical_variable(inst.weights);
    double rhs = f(x, x);
    for (const auto& [label, yz] : inst.family) {
      rhs += inst.weights.at(label).to_double() * f(yz.first, yz.second);
    }
    tracker.add(std::abs(lhs - rhs), [&] {
      json family = json::object();
      for (const auto& [label, yz] : inst.family) family[label] = pair_document("Y", yz.first, "Z", yz.second);
      return json{{"weights", io::pmf_json(inst.weights)},
                  {"family", std::move(family)},
                  {"lhs", ResidualTracker::json_number(lhs)},
                  {"rhs", ResidualTracker::json_number(rhs)}};
    });
  }
  return tracker.finish();
}

AxiomReport check_symmetry(const CandidateFunctional& f, std::span<const PairInstance> pairs,
                           double tol) {
  ResidualTracker tracker(Axiom::symmetry, tol);
  for (const auto& inst : pairs) {
    const double xy = f(inst.x, inst.y);
    const double yx = f(inst.y, inst.x);
    tracker.add(std::abs(xy - yx), [&] {
      return json{{"instance", pair_document("X", inst.x, "Y", inst.y)},
                  {"F(X,Y)", ResidualTracker::json_number(xy)},
                  {"F(Y,X)", ResidualTracker::json_number(yx)}};
    });
  }
  return tracker.finish();
}

AxiomReport check_pullback_invariance(const CandidateFunctional& f,
                                      std::span<const PullbackInstance> pullbacks, double tol) {
  ResidualTracker tracker(Axiom::pullback_invariance, tol);
  for (const auto& inst : pullbacks) {
    const double before = f(inst.x, inst.y);
    const double after = f(pull_back(inst.x, inst.map), pull_back(inst.y, inst.map));
    tracker.add(std::abs(before - after), [&] {
      return json{{"instance", pair_document("X", inst.x, "Y", inst.y)},
                  {"map", io::map_json(inst.map)},
                  {"F(X,Y)", ResidualTracker::json_number(before)},
                  {"F(X∘π,Y∘π)", ResidualTracker::json_number(after)}};
    });
  }
  return tracker.finish();
}

AxiomReport check_weak_functoriality(const CandidateFunctional& f,
                                     std::span<const GeneratedTriangle> triangles, double tol) {
  ResidualTracker tracker(Axiom::weak_functoriality, tol);
  for (const auto& [family, t] : triangles) {
    const double xz = f(t.x(), t.z());
    const double xy = f(t.x(), t.y());
    const double yz = f(t.y(), t.z());
    const double yy = f(t.y(), t.y());
    tracker.add(std::abs(xz - xy - yz + yy), [&] {
      json doc = io::to_json(io::make_document({{"X", t.x()}, {"Y", t.y()}, {"Z", t.z()}}));
      json mediator = nullptr;
      if (auto h = find_mediator(t)) mediator = io::mediator_json(*h);
      return json{{"triangle", std::move(doc)},
                  {"family", family_name(family)},
                  {"mediator", std::move(mediator)},
                  {"F(X,Z)", ResidualTracker::json_number(xz)},
                  {"F(X,Y)", ResidualTracker::json_number(xy)},
                  {"F(Y,Z)", ResidualTracker::json_number(yz)},
                  {"F(Y,Y)", ResidualTracker::json_number(yy)}};
    });
  }
  return tracker.finish();
}

AxiomReport check_vacuity(const CandidateFunctional& f, std::span<const VacuityInstance> instances,
                          double tol) {
  ResidualTracker tracker(Axiom::vacuity, tol);
  for (const auto& inst : instances) {
    const double value = f(inst.x, inst.constant);
    tracker.add(std::abs(value), [&] {
      return json{{"instance", pair_document("C", inst.constant, "X", inst.x)},
                  {"F(X,C)", ResidualTracker::json_number(value)}};
    });
  }
  return tracker.finish();
}

ProbeReport characterization_probe(const CandidateFunctional& f,
                                   std::span<const PairInstance> pairs, double tol) {
  const auto coin = fair_coin();
  ProbeReport report;
  report.tolerance = tol;
  report.fitted_c = f(coin, coin);
  if (report.fitted_c < tol) {
    for (const auto& inst : pairs) {
      const double v = f(inst.x, inst.y);
      if (!(std::abs(v) <= tol)) {
        throw DegenerateFit("F(B,B) = " + std::to_string(report.fitted_c) +
                            " for a fair coin B, but F is not identically zero on the corpus");
      }
    }
    if (report.fitted_c < -tol) throw DegenerateFit("negative scale fitted from a fair coin");
  }
  for (const auto& inst : pairs) {
    const double deviation =
        std::abs(f(inst.x, inst.y) - report.fitted_c * mutual_information(inst.x, inst.y));
    report.max_abs_deviation =
        std::isnan(deviation) ? std::numeric_limits<double>::infinity()
                              : std::max(report.max_abs_deviation, deviation);
    ++report.instances;
  }
  return report;
}

std::set<int> AuditResult::failed_axioms() const {
  std::set<int> out;
  for (const auto& r : axioms) {
    if (!r.passed()) out.insert(static_cast<int>(r.axiom));
  }
  return out;
}

AuditResult audit(const CandidateFunctional& f, const AuditCorpus& corpus,
                  const AuditOptions& options) {
  AuditResult result;
  result.functional = f.name;
  result.axioms.push_back(
      check_continuity(f, corpus.sequences, options.continuity_tolerance, options.probe_indices));
  result.axioms.push_back(check_strong_additivity(f, corpus.mixtures, options.tolerance));
  result.axioms.push_back(check_symmetry(f, corpus.pairs, options.tolerance));
  result.axioms.push_back(check_pullback_invariance(f, corpus.pullbacks, options.tolerance));
  result.axioms.push_back(check_weak_functoriality(f, corpus.triangles, options.tolerance));
  result.axioms.push_back(check_vacuity(f, corpus.vacuity, options.tolerance));
  try {
    result.probe = characterization_probe(f, corpus.pairs, options.probe_tolerance);
  } catch (const DegenerateFit& e) {
    result.probe_error = e.what();
  }
  return result;
}

json to_json(const AxiomReport& report) {
  return json{{"axiom", static_cast<int>(report.axiom)},
              {"name", axiom_name(report.axiom)},
              {"instances_tested", report.instances_tested},
              {"max_residual", ResidualTracker::json_number(report.max_residual)},
              {"tolerance", report.tolerance},
              {"passed", report.passed()},
              {"counterexample", report.counterexample ? *report.counterexample : json(nullptr)},
              {"note", report.note}};
}

json to_json(const ProbeReport& report) {
  return json{{"fitted_c", ResidualTracker::json_number(report.fitted_c)},
              {"max_abs_deviation", ResidualTracker::json_number(report.max_abs_deviation)},
              {"instances", report.instances},
              {"tolerance", report.tolerance},
              {"passed", report.passed()}};
}

json to_json(const AuditResult& result) {
  json axioms = json::array();
  for (const auto& r : result.axioms) axioms.push_back(to_json(r));
  json probe = result.probe ? to_json(*result.probe)
                            : json{{"passed", false}, {"error", result.probe_error}};
  return json{{"functional", result.functional},
              {"axioms", std::move(axioms)},
              {"failed_axioms", result.failed_axioms()},
              {"probe", std::move(probe)},
              {"passed", result.passed()}};
}

// ---------------------------------------------------------------------------
// Catalogue

CandidateFunctional mutual_information_functional() {
  return {"mutual_information", "I(X,Y) = H(X) + H(Y) - H(X,Y)",
          [](const FiniteRandomVariable& x, const FiniteRandomVariable& y) {
            return mutual_information(x, y);
          },
          {}};
}

CandidateFunctional scaled_mutual_information(double c) {
  return {"scaled_mutual_information", "c * I(X,Y)",
          [c](const FiniteRandomVariable& x, const FiniteRandomVariable& y) {
            return c * mutual_information(x, y);
          },
          {}};
}

std::vector<CandidateFunctional> builtin_functionals() {
  using V = FiniteRandomVariable;
  std::vector<CandidateFunctional> out;
  out.push_back(mutual_information_functional());
  out.push_back({"joint_entropy", "H(X,Y); satisfies every axiom but vacuity",
                 [](const V& x, const V& y) { return joint_entropy(x, y); },
                 {6}});
  out.push_back({"conditional_entropy", "H(Y|X); satisfies every axiom but symmetry",
                 [](const V& x, const V& y) { return conditional_entropy(x, y); },
                 {3}});
  out.push_back({"conditional_entropy_reversed", "H(X|Y); F(X,C) = H(X) breaks vacuity as well",
                 [](const V& x, const V& y) { return conditional_entropy(y, x); },
                 {3, 6}});
  {
    auto scaled = scaled_mutual_information(2.5);
    scaled.description = "2.5 * I(X,Y)";
    out.push_back(std::move(scaled));
  }
  out.push_back({"squared_mutual_information", "I(X,Y)^2; not additive",
                 [](const V& x, const V& y) {
                   const double i = mutual_information(x, y);
                   return i * i;
                 },
                 {2, 5}});
  out.push_back({"space_entropy",
                 "Shannon entropy of the sample-space weights; depends on the space, not the pair",
                 [](const V& x, const V&) { return entropy(x.space()->weights()); },
                 {4, 6}});
  out.push_back({"dependence_indicator",
                 "1 if the joint table differs from the product of its marginals, else 0",
                 [](const V& x, const V& y) {
                   const auto t = joint_table(x, y);
                   const auto px = x.pmf_values();
                   const auto py = y.pmf_values();
                   for (std::size_t r = 0; r < px.size(); ++r) {
                     for (std::size_t c = 0; c < py.size(); ++c) {
                       if (t.at(r, c) != px[r] * py[c]) return 1.0;
                     }
                   }
                   return 0.0;
                 },
                 {1, 2, 5}});
  out.push_back({"mi_plus_joint_entropy", "I(X,Y) + 0.01 * H(X,Y)",
                 [](const V& x, const V& y) {
                   return mutual_information(x, y) + 0.01 * joint_entropy(x, y);
                 },
                 {6}});
  return out;
}

std::optional<CandidateFunctional> find_functional(std::string_view name) {
  for (auto& f : builtin_functionals()) {
    if (f.name == name) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Identities

double distribution_functional(const CandidateFunctional& f, const Pmf& p) {
  const auto x = canonical_variable(p);
  return f(x, x);
}

FaddeevReport check_faddeev(const CandidateFunctional& f, std::uint64_t seed, std::size_t count,
                            double tol) {
  InstanceGenerator gen(seed);
  const std::size_t max_alphabet = gen.bounds().max_alphabet;
  FaddeevReport report;

  report.point_mass = {"point_mass", 1, std::abs(distribution_functional(f, Pmf{{"*", Rational(1)}})), 0.0};

  report.bijection = {"bijection_invariance", 0, 0.0, 0.0};
  for (std::size_t i = 0; i < count; ++i) {
    const Pmf p = gen.pmf(gen.uniform(1, max_alphabet), "x");
    std::vector<Label> labels;
    for (const auto& [label, mass] : p) labels.push_back(label);
    const Relabeling g = gen.bijection(labels, "y");
    Pmf moved;
    for (const auto& [label, mass] : p) moved.emplace(g(label), mass);
    const double residual = std::abs(distribution_functional(f, p) - distribution_functional(f, moved));
    report.bijection.max_residual = std::max(report.bijection.max_residual, residual);
    ++report.bijection.instances;
  }

  report.grouping = {"grouping_law", 0, 0.0, tol};
  for (std::size_t i = 0; i < count; ++i) {
    const Pmf p = gen.pmf(gen.uniform(1, max_alphabet), "x");
    Pmf mixed;
    double rhs = distribution_functional(f, p);
    for (const auto& [x, mass] : p) {
      const Pmf qx = gen.pmf(gen.uniform(1, max_alphabet), "y");
      rhs += mass.to_double() * distribution_functional(f, qx);
      for (const auto& [y, qy] : qx) mixed.emplace(pair_label(x, y), mass * qy);
    }
    const double residual = std::abs(distribution_functional(f, mixed) - rhs);
    report.grouping.max_residual = std::max(report.grouping.max_residual, residual);
    ++report.grouping.instances;
  }

  // p_n = (1 − 1/n)p + p'/n, probed at n = 10^6.
  report.continuity = {"continuity", 0, 0.0, 1e-4};
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = gen.uniform(1, max_alphabet);
    const Pmf p = gen.pmf(k, "x");
    const Pmf target = gen.pmf(k, "x", false);
    const Rational step(1, 1'000'000);
    Pmf p_n;
    for (const auto& [label, mass] : p) p_n.emplace(label, mass + (target.at(label) - mass) * step);
    const double residual = std::abs(distribution_functional(f, p) - distribution_functional(f, p_n));
    report.continuity.max_residual = std::max(report.continuity.max_residual, residual);
    ++report.continuity.instances;
  }
  return report;
}

double bijection_constant_residual(const CandidateFunctional& f, const FiniteRandomVariable& x,
                                   const Relabeling& bijection, const FiniteRandomVariable& constant) {
  const auto fx = relabel(x, bijection);
  const double lhs = f(x, constant) - f(fx, constant) + f(fx, fx);
  const double rhs = f(fx, constant) - f(x, constant) + f(x, x);
  return lhs - rhs;
}

std::pair<double, double> product_absorption_residuals(const CandidateFunctional& f,
                                                       const FiniteRandomVariable& x,
                                                       const FiniteRandomVariable& y) {
  const auto p = canonical_product(x, y);
  return {f(x, p) - f(x, x), f(p, y) - f(y, y)};
}

}  // namespace infoax
