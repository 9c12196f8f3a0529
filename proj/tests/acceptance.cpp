// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exits non-zero if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "infoax/axioms.hpp"
#include "infoax/cli.hpp"
#include "infoax/constructions.hpp"
#include "infoax/corpus.hpp"
#include "infoax/markov.hpp"
#include "infoax/measures.hpp"
#include "support.hpp"

using namespace infoax;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome definitional_identities() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  InstanceGenerator gen(1001);
  double worst = 0, min_i = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = gen.pair();
    const auto& x = inst.x;
    const auto& y = inst.y;
    const double mi = mutual_information(x, y);
    o.require(mi == (entropy(x) + entropy(y)) - joint_entropy(x, y), "I differs from H(X)+H(Y)-H(X,Y)");
    worst = std::max(worst, std::abs(mi - (mutual_information(y, y) - conditional_entropy(x, y))));
    min_i = std::min(min_i, mi);
    o.require(mutual_information(x, FiniteRandomVariable::constant(x.space())) == 0.0, "I(X,C) != 0");
  }
  const double t = seconds_since(start);
  o.require(worst <= 1e-9, "I(Y,Y)-H(Y|X) residual " + fmt(worst));
  o.require(min_i >= -1e-9, "negative I " + fmt(min_i));
  o.require(t < 5.0, "runtime " + fmt(t) + " s");
  if (o.passed) o.detail = "1000 pairs, max chain residual " + fmt(worst) + ", " + fmt(t) + " s";
  return o;
}

Outcome strong_additivity() {
  Outcome o;
  InstanceGenerator gen(1002);
  std::vector<MixtureInstance> mixtures;
  for (int i = 0; i < 500; ++i) mixtures.push_back(gen.mixture());
  const auto report = check_strong_additivity(mutual_information_functional(), mixtures, 1e-9);
  o.require(report.passed() && report.instances_tested == 500, "max residual " + fmt(report.max_residual));

  const auto coin = FiniteRandomVariable::identity(uniform_space(2));
  const auto c = FiniteRandomVariable::constant(coin.space());
  const Pmf half{{"0", Rational(1, 2)}, {"1", Rational(1, 2)}};
  const auto [y, z] = convex_sum_pairs(half, {{"0", {coin, coin}}, {"1", {c, c}}});
  const double lhs = mutual_information(y, z);
  const auto x = canonical_variable(half);
  const double rhs = mutual_information(x, x) + 0.5 * mutual_information(coin, coin) + 0.5 * mutual_information(c, c);
  o.require(std::abs(lhs - 1.5) <= 1e-12 && std::abs(rhs - 1.5) <= 1e-12,
            "hand example " + fmt(lhs) + " vs " + fmt(rhs));
  if (o.passed) o.detail = "500 mixtures, max residual " + fmt(report.max_residual) + "; hand example 1.5 = 1.5";
  return o;
}

Outcome convex_product_equality() {
  Outcome o;
  InstanceGenerator gen(1003);
  std::size_t outcomes = 0;
  for (int i = 0; i < 200; ++i) {
    const auto m = gen.mixture();
    const auto cmp = compare_convex_product(m.weights, m.family);
    outcomes += cmp.outcomes_checked;
    o.require(cmp.equal(), "instance " + std::to_string(i) + " has " + std::to_string(cmp.mismatches) +
                               " mismatched outcomes");
  }
  if (o.passed) o.detail = "200 instances, " + std::to_string(outcomes) + " outcomes, all labels equal";
  return o;
}

Outcome markov_triangle_suite() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  InstanceGenerator gen(1004);
  double wf = 0, cr = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = generate_markov_triangle(gen, static_cast<TriangleFamily>(i % 4));
    const auto& t = g.triple;
    const auto h = find_mediator(t);
    o.require(h && verify_mediator(t, *h), "mediator check failed on " + std::string(family_name(g.family)));
    wf = std::max(wf, std::abs(weak_functoriality_residual(t)));
    cr = std::max(cr, std::abs(chain_rule_residual(t)));
    o.require(mutual_information(t.x(), t.z()) <=
                  mutual_information(t.x(), t.y()) + mutual_information(t.y(), t.z()) + 1e-9,
              "I(X,Z) exceeds I(X,Y)+I(Y,Z)");
  }
  const double t = seconds_since(start);
  o.require(wf <= 1e-9, "weak functoriality residual " + fmt(wf));
  o.require(cr <= 1e-9, "chain rule residual " + fmt(cr));
  o.require(t < 30.0, "runtime " + fmt(t) + " s");
  if (o.passed) {
    o.detail = "1000 triangles, residuals " + fmt(wf) + " / " + fmt(cr) + ", " + fmt(t) + " s";
  }
  return o;
}

Outcome mediator_oracle_equivalence() {
  Outcome o;
  CorpusBounds bounds;
  bounds.max_alphabet = 3;
  bounds.max_outcomes = 6;
  InstanceGenerator gen(1005, bounds);
  int found = 0, none = 0;
  for (int i = 0; i < 200; ++i) {
    // Cycle through all 27 alphabet-size shapes.
    const std::size_t kx = 1 + i % 3, ky = 1 + (i / 3) % 3, kz = 1 + (i / 9) % 3;
    const auto s = gen.space(gen.uniform(std::max({kx, ky, kz}), bounds.max_outcomes));
    const Triple t(gen.variable(s, kx, "x"), gen.variable(s, ky, "y"), gen.variable(s, kz, "z"));
    const bool expected = infoax::testing::brute_force_has_mediator(t.x(), t.y(), t.z());
    const auto h = find_mediator(t);
    o.require(h.has_value() == expected, "disagreement on instance " + std::to_string(i));
    if (h) o.require(verify_mediator(t, *h), "returned mediator does not verify");
    (h ? found : none)++;
  }
  if (o.passed) {
    o.detail = "200 triples over 27 shapes, " + std::to_string(found) + " with mediator, " +
               std::to_string(none) + " without";
  }
  return o;
}

Outcome sharpness() {
  Outcome o;
  const auto corpus = standard_corpus();
  const auto je = audit(*find_functional("joint_entropy"), corpus);
  const auto ce = audit(*find_functional("conditional_entropy"), corpus);
  const auto mi = audit(mutual_information_functional(), corpus);
  o.require(je.failed_axioms() == std::set<int>{6}, "joint_entropy fails a different set");
  o.require(ce.failed_axioms() == std::set<int>{3}, "conditional_entropy fails a different set");
  o.require(mi.axioms_pass(), "mutual_information fails an axiom");
  o.require(mi.probe && std::abs(mi.probe->fitted_c - 1.0) <= 1e-6 && mi.probe->max_abs_deviation <= 1e-6,
            "mutual_information probe off");
  if (o.passed) o.detail = "joint_entropy fails {6}, conditional_entropy fails {3}, mutual_information passes, c = 1";
  return o;
}

Outcome scaled_probe() {
  Outcome o;
  const auto corpus = standard_corpus();
  for (double c0 : {0.0, 0.5, 1.0, 2.5}) {
    const auto p = characterization_probe(scaled_mutual_information(c0), corpus.pairs, 1e-9);
    o.require(std::abs(p.fitted_c - c0) <= 1e-9 && p.max_abs_deviation <= 1e-9,
              "c0 = " + fmt(c0) + " fitted " + fmt(p.fitted_c));
  }
  const auto mixed = audit(*find_functional("mi_plus_joint_entropy"), corpus);
  o.require(!mixed.passed(), "I + 0.01 H(X,Y) passes the audit");
  o.require(mixed.probe && mixed.probe->max_abs_deviation >= 1e-3, "deviation below 1e-3");
  if (o.passed) {
    o.detail = "c0 in {0, 1/2, 1, 2.5} recovered; I + 0.01 H(X,Y) deviates by " +
               fmt(mixed.probe->max_abs_deviation);
  }
  return o;
}

Outcome continuity_probing() {
  Outcome o;
  const Rational q(1, 4);
  const auto seq = inverse_polynomial_sequence(
      {"0", "1"}, {"0", "1"},
      {InversePolynomial({q, q}), InversePolynomial({q, -q}), InversePolynomial({q, -q}),
       InversePolynomial({q, q})},
      1);
  std::vector<double> gaps;
  for (std::uint64_t n : {100ULL, 10'000ULL, 1'000'000ULL}) gaps.push_back(std::abs(mutual_information(seq.generator(n))));
  o.require(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gaps not strictly decreasing");
  o.require(gaps[2] <= 1e-6, "gap at n = 1e6 is " + fmt(gaps[2]));
  if (o.passed) o.detail = "|I_n| = " + fmt(gaps[0]) + ", " + fmt(gaps[1]) + ", " + fmt(gaps[2]);
  return o;
}

Outcome faddeev() {
  Outcome o;
  const auto r = check_faddeev(mutual_information_functional(), 1009, 200);
  o.require(r.point_mass.max_residual == 0.0, "S(point mass) = " + fmt(r.point_mass.max_residual));
  o.require(r.bijection.max_residual == 0.0, "bijection residual " + fmt(r.bijection.max_residual));
  o.require(r.grouping.max_residual <= 1e-9 && r.grouping.instances == 200,
            "grouping residual " + fmt(r.grouping.max_residual));
  if (o.passed) o.detail = "point mass 0, bijections exact, grouping residual " + fmt(r.grouping.max_residual);
  return o;
}

Outcome cli_contract() {
  Outcome o;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "infoax_acceptance";
  fs::create_directories(dir);
  auto call = [](const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream so, se;
    const int code = cli::run(args, so, se);
    if (out) *out = so.str();
    return code;
  };
  auto six = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  // Independent value for [[1/3,1/6],[1/6,1/3]]: Σ ϑ log ϑ/(p q).
  const auto tilted = infoax::testing::oracle_mutual_information(
      coordinate_variables(JointTable({"0", "1"}, {"0", "1"},
                                      {Rational(1, 3), Rational(1, 6), Rational(1, 6), Rational(1, 3)}))
          .first,
      coordinate_variables(JointTable({"0", "1"}, {"0", "1"},
                                      {Rational(1, 3), Rational(1, 6), Rational(1, 6), Rational(1, 3)}))
          .second);
  const std::vector<std::pair<std::string, double>> examples{
      {R"([["1/4","1/4"],["1/4","1/4"]])", 0.0},
      {R"([["1/2","0"],["0","1/2"]])", 1.0},
      {R"([["1/3","1/6"],["1/6","1/3"]])", static_cast<double>(tilted)}};
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const auto path = (dir / ("example" + std::to_string(i) + ".json")).string();
    std::ofstream(path) << R"({"version": 1, "joint": {"cells": )" << examples[i].first << "}}";
    std::string out;
    o.require(call({"compute", path}, &out) == 0, "compute exited non-zero");
    const double got = nlohmann::json::parse(out)["measures"]["I(X,Y)"].get<double>();
    o.require(six(got) == six(examples[i].second), "compute example " + std::to_string(i) + ": " + six(got));
  }

  o.require(call({"audit", "--functional", "mutual_information"}) == 0, "mutual_information audit exit");
  o.require(call({"audit", "--functional", "joint_entropy"}) == 1, "joint_entropy audit exit");
  o.require(call({"audit", "--functional", "no_such_functional"}) == 2, "unknown functional exit");
  const auto bad = (dir / "bad.json").string();
  std::ofstream(bad) << R"({"version": 1, "joint": {"cells": [["1/2", "1/3"]]}})";
  o.require(call({"compute", bad}) == 2, "invalid document exit");

  std::string first, second;
  call({"audit", "--all", "--seed", "7"}, &first);
  call({"audit", "--all", "--seed", "7"}, &second);
  o.require(!first.empty() && first == second, "audit reports differ between runs");
  fs::remove_all(dir);
  if (o.passed) o.detail = "compute examples match to 6 digits, exit codes 0/1/2, reports byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"definitional identities", definitional_identities},
      {"strong additivity", strong_additivity},
      {"convex product function equality", convex_product_equality},
      {"Markov triangle suite", markov_triangle_suite},
      {"mediator search vs exhaustive oracle", mediator_oracle_equivalence},
      {"sharpness reproduction", sharpness},
      {"scaled uniqueness probe", scaled_probe},
      {"continuity probing", continuity_probing},
      {"Faddeev sub-checks", faddeev},
      {"CLI contract", cli_contract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.passed;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << ": "
              << o.detail << '\n';
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
