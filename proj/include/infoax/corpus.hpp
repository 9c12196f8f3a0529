#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string_view>
#include <vector>

#include "infoax/constructions.hpp"
#include "infoax/prob_core.hpp"

namespace infoax {

// Size limits for generated instances. The defaults keep rationals small
// enough that exact arithmetic stays cheap and counterexamples stay readable.
struct CorpusBounds {
  std::size_t max_alphabet = 5;
  std::size_t max_outcomes = 8;
  long max_denominator = 24;
  // Probability that a generated space carries zero-weight outcomes.
  double zero_weight_rate = 0.2;
};

struct PairInstance {
  FiniteRandomVariable x;
  FiniteRandomVariable y;
};

struct MixtureInstance {
  Pmf weights;
  std::map<Label, VariablePair> family;
};

struct PullbackInstance {
  FiniteRandomVariable x;
  FiniteRandomVariable y;
  MeasurePreservingMap map;
};

struct SequenceInstance {
  std::vector<Label> rows;
  std::vector<Label> cols;
  std::vector<InversePolynomial> cells;
  std::uint64_t stabilization_index = 1;

  JointSequence sequence() const;
  JointTable limit() const;
};

/// Seeded source of random spaces, variables and composite instances. All
/// draws go through a 64-bit Mersenne twister with hand-rolled range
/// reduction, so a seed yields the same corpus on every platform.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, CorpusBounds bounds = {});

  const CorpusBounds& bounds() const { return bounds_; }

  /// Uniform in [lo, hi].
  std::size_t uniform(std::size_t lo, std::size_t hi);
  bool chance(double probability);

  /// n masses with a common denominator d ≤ max_denominator summing to 1.
  std::vector<Rational> weights(std::size_t n, bool allow_zero);
  Pmf pmf(std::size_t n, std::string_view prefix, bool allow_zero = true);

  SpacePtr space(std::size_t n);
  SpacePtr space();
  /// Surjective variable onto prefix0..prefix{k-1}; requires k ≤ space size.
  FiniteRandomVariable variable(const SpacePtr& space, std::size_t k, std::string_view prefix);
  FiniteRandomVariable variable(const SpacePtr& space, std::string_view prefix);

  /// Random bijection from alphabet onto fresh labels prefix0.., shuffled.
  Relabeling bijection(const std::vector<Label>& alphabet, std::string_view prefix);
  /// Random function from alphabet into prefix0..prefix{k-1} (k random).
  std::map<Label, Label> function(const std::vector<Label>& alphabet, std::string_view prefix);

  PairInstance pair();
  MixtureInstance mixture();
  PullbackInstance pullback();
  /// ϑ_n = (1 − 1/n)ϑ + ϑ'/n; in a third of the draws ϑ is a product of its
  /// marginals, so the limit has zero mutual information.
  SequenceInstance sequence();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  CorpusBounds bounds_;
};

}  // namespace infoax
