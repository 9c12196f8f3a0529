#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "infoax/constructions.hpp"
#include "infoax/corpus.hpp"
#include "infoax/markov.hpp"

namespace infoax {

using Functional =
    std::function<double(const FiniteRandomVariable&, const FiniteRandomVariable&)>;

/// A deterministic real-valued map on same-space pairs of variables, the
/// object under audit.
struct CandidateFunctional {
  std::string name;
  std::string description;
  Functional eval;
  /// Axiom ids (1–6) that an audit is expected to reject. Only meaningful
  /// for the built-in catalogue.
  std::set<int> expected_failures;

  double operator()(const FiniteRandomVariable& x, const FiniteRandomVariable& y) const {
    return eval(x, y);
  }
};

enum class Axiom : int {
  continuity = 1,
  strong_additivity = 2,
  symmetry = 3,
  pullback_invariance = 4,
  weak_functoriality = 5,
  vacuity = 6,
};

inline constexpr std::array<Axiom, 6> kAllAxioms{
    Axiom::continuity,         Axiom::strong_additivity, Axiom::symmetry,
    Axiom::pullback_invariance, Axiom::weak_functoriality, Axiom::vacuity};

std::string_view axiom_name(Axiom axiom);

/// Worst residual of one axiom over a batch of instances. A counterexample
/// (the worst offending instance) is attached iff max_residual > tolerance.
struct AxiomReport {
  Axiom axiom = Axiom::continuity;
  std::size_t instances_tested = 0;
  double max_residual = 0;
  double tolerance = 0;
  std::optional<nlohmann::json> counterexample;
  std::string note;

  bool passed() const { return !counterexample.has_value(); }
};

/// F(X,Y) ≈ c·I(X,Y) with c read off a fair coin B as F(B,B).
struct ProbeReport {
  double fitted_c = 0;
  double max_abs_deviation = 0;
  std::size_t instances = 0;
  double tolerance = 0;

  bool passed() const { return max_abs_deviation <= tolerance; }
};

struct VacuityInstance {
  FiniteRandomVariable x;
  FiniteRandomVariable constant;
};

/// Instances for every axiom, all derived from one seed.
struct AuditCorpus {
  std::uint64_t seed = 0;
  std::vector<SequenceInstance> sequences;
  std::vector<MixtureInstance> mixtures;
  std::vector<PairInstance> pairs;
  std::vector<PullbackInstance> pullbacks;
  std::vector<GeneratedTriangle> triangles;
  std::vector<VacuityInstance> vacuity;
};

inline constexpr std::uint64_t kDefaultSeed = 7;
inline constexpr std::size_t kDefaultInstances = 100;

/// `per_axiom` random instances per axiom, plus a handful of fixed witnesses
/// (independent coins, the coin/constant mixture, a halving refinement, a
/// slowly decorrelating sequence) that keep sharpness results independent of
/// the seed.
AuditCorpus standard_corpus(std::uint64_t seed = kDefaultSeed,
                            std::size_t per_axiom = kDefaultInstances,
                            const CorpusBounds& bounds = {});

struct AuditOptions {
  /// Identity checks (axioms 2–6).
  double tolerance = 1e-9;
  /// Continuity residual allowed at the largest probe index, and the largest
  /// increase allowed between consecutive probes.
  double continuity_tolerance = 1e-4;
  double probe_tolerance = 1e-6;
  std::vector<std::uint64_t> probe_indices{100, 10'000, 1'000'000};
};

/// Per-instance residual is the larger of |F(limit) − F(term)| at the last
/// probe and the largest increase of that gap between consecutive probes.
/// Finite probing can only falsify continuity, never establish it.
AxiomReport check_continuity(const CandidateFunctional& f, std::span<const SequenceInstance> seqs,
                             double tol, std::span<const std::uint64_t> probe_indices);
/// |F(⊕p(x)(Y^x,Z^x)) − F(X,X) − Σ p(x)F(Y^x,Z^x)| with X the identity
/// variable on (labels of p, p).
AxiomReport check_strong_additivity(const CandidateFunctional& f,
                                    std::span<const MixtureInstance> mixtures, double tol);
AxiomReport check_symmetry(const CandidateFunctional& f, std::span<const PairInstance> pairs,
                           double tol);
AxiomReport check_pullback_invariance(const CandidateFunctional& f,
                                      std::span<const PullbackInstance> pullbacks, double tol);
AxiomReport check_weak_functoriality(const CandidateFunctional& f,
                                     std::span<const GeneratedTriangle> triangles, double tol);
AxiomReport check_vacuity(const CandidateFunctional& f, std::span<const VacuityInstance> instances,
                          double tol);

/// Throws DegenerateFit when F(B,B) < tol (or is negative) while F is not
/// within tol of zero across the corpus.
ProbeReport characterization_probe(const CandidateFunctional& f,
                                   std::span<const PairInstance> pairs, double tol);

struct AuditResult {
  std::string functional;
  std::vector<AxiomReport> axioms;
  std::optional<ProbeReport> probe;
  std::string probe_error;

  std::set<int> failed_axioms() const;
  bool axioms_pass() const { return failed_axioms().empty(); }
  bool passed() const { return axioms_pass() && probe && probe->passed(); }
};

AuditResult audit(const CandidateFunctional& f, const AuditCorpus& corpus,
                  const AuditOptions& options = {});

nlohmann::json to_json(const AxiomReport& report);
nlohmann::json to_json(const ProbeReport& report);
nlohmann::json to_json(const AuditResult& result);

// ---------------------------------------------------------------------------
// Catalogue

CandidateFunctional mutual_information_functional();
CandidateFunctional scaled_mutual_information(double c);
std::vector<CandidateFunctional> builtin_functionals();
std::optional<CandidateFunctional> find_functional(std::string_view name);

// ---------------------------------------------------------------------------
// Identities the characterization argument runs through, as residuals.

/// S(p) = F(X_p, X_p) with X_p the identity variable on (labels of p, p).
double distribution_functional(const CandidateFunctional& f, const Pmf& p);

struct PropertyReport {
  std::string name;
  std::size_t instances = 0;
  double max_residual = 0;
  double tolerance = 0;

  bool passed() const { return max_residual <= tolerance; }
};

/// The four hypotheses of Faddeev's theorem for S: continuity along
/// converging pmfs, S(point mass) = 0, invariance under bijections of the
/// alphabet, and the grouping law S(⊕p(x)q^x) = S(p) + Σ p(x)S(q^x).
struct FaddeevReport {
  PropertyReport continuity;
  PropertyReport point_mass;
  PropertyReport bijection;
  PropertyReport grouping;

  bool passed() const {
    return continuity.passed() && point_mass.passed() && bijection.passed() && grouping.passed();
  }
};

FaddeevReport check_faddeev(const CandidateFunctional& f, std::uint64_t seed, std::size_t count,
                            double tol = 1e-9);

/// [F(X,C) − F(f∘X,C) + F(f∘X,f∘X)] − [F(f∘X,C) − F(X,C) + F(X,X)]; zero for
/// any symmetric, weakly functorial F.
double bijection_constant_residual(const CandidateFunctional& f, const FiniteRandomVariable& x,
                                   const Relabeling& bijection, const FiniteRandomVariable& constant);

/// (F(X,P(X,Y)) − F(X,X), F(P(X,Y),Y) − F(Y,Y)); both vanish for F satisfying
/// all six axioms.
std::pair<double, double> product_absorption_residuals(const CandidateFunctional& f,
                                                       const FiniteRandomVariable& x,
                                                       const FiniteRandomVariable& y);

}  // namespace infoax
