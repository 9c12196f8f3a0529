#include "infoax/corpus.hpp"

#include <algorithm>
#include <numeric>

namespace infoax {

namespace {

std::vector<Label> numbered(std::string_view prefix, std::size_t k) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace

JointSequence SequenceInstance::sequence() const {
  return inverse_polynomial_sequence(rows, cols, cells, stabilization_index);
}

JointTable SequenceInstance::limit() const { return inverse_polynomial_limit(rows, cols, cells); }

InstanceGenerator::InstanceGenerator(std::uint64_t seed, CorpusBounds bounds)
    : engine_(seed), bounds_(bounds) {}

std::size_t InstanceGenerator::uniform(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

bool InstanceGenerator::chance(double probability) {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < probability;
}

std::vector<Rational> InstanceGenerator::weights(std::size_t n, bool allow_zero) {
  const long max_den = bounds_.max_denominator;
  const long lo = allow_zero ? 1 : static_cast<long>(n);
  const long den = static_cast<long>(uniform(static_cast<std::size_t>(std::min(lo, max_den)),
                                             static_cast<std::size_t>(max_den)));
  std::vector<long> cuts;
  if (allow_zero || den < static_cast<long>(n)) {
    // Stars and bars with empty bins allowed.
    for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(static_cast<long>(uniform(0, den)));
  } else {
    std::vector<long> pool(static_cast<std::size_t>(den - 1));
    std::iota(pool.begin(), pool.end(), 1L);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t j = uniform(i, pool.size() - 1);
      std::swap(pool[i], pool[j]);
      cuts.push_back(pool[i]);
    }
  }
  cuts.push_back(0);
  cuts.push_back(den);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(cuts[i + 1] - cuts[i], den);
  return out;
}

Pmf InstanceGenerator::pmf(std::size_t n, std::string_view prefix, bool allow_zero) {
  auto masses = weights(n, allow_zero);
  Pmf out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(std::string(prefix) + std::to_string(i), masses[i]);
  return out;
}

SpacePtr InstanceGenerator::space(std::size_t n) {
  return make_space(numbered("w", n), weights(n, chance(bounds_.zero_weight_rate)));
}

SpacePtr InstanceGenerator::space() { return space(uniform(1, bounds_.max_outcomes)); }

FiniteRandomVariable InstanceGenerator::variable(const SpacePtr& space, std::size_t k,
                                                 std::string_view prefix) {
  const std::size_t n = space->size();
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i + 1 < n; ++i) std::swap(order[i], order[uniform(i, n - 1)]);
  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t code = i < k ? i : uniform(0, k - 1);
    labels[order[i]] = std::string(prefix) + std::to_string(code);
  }
  return FiniteRandomVariable(space, std::move(labels));
}

FiniteRandomVariable InstanceGenerator::variable(const SpacePtr& space, std::string_view prefix) {
  return variable(space, uniform(1, std::min(bounds_.max_alphabet, space->size())), prefix);
}

Relabeling InstanceGenerator::bijection(const std::vector<Label>& alphabet, std::string_view prefix) {
  auto targets = numbered(prefix, alphabet.size());
  for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
    std::swap(targets[i], targets[uniform(i, targets.size() - 1)]);
  }
  std::map<Label, Label> m;
  for (std::size_t i = 0; i < alphabet.size(); ++i) m.emplace(alphabet[i], targets[i]);
  return Relabeling(std::move(m));
}

std::map<Label, Label> InstanceGenerator::function(const std::vector<Label>& alphabet,
                                                   std::string_view prefix) {
  const std::size_t k = uniform(1, std::min(bounds_.max_alphabet, alphabet.size()));
  std::map<Label, Label> m;
  for (const auto& a : alphabet) m.emplace(a, std::string(prefix) + std::to_string(uniform(0, k - 1)));
  return m;
}

PairInstance InstanceGenerator::pair() {
  auto s = space();
  auto x = variable(s, "x");
  auto y = variable(s, "y");
  return {std::move(x), std::move(y)};
}

MixtureInstance InstanceGenerator::mixture() {
  MixtureInstance inst;
  inst.weights = pmf(uniform(1, bounds_.max_alphabet), "m");
  // Keep the base space small: the mixture multiplies its size by |X|.
  auto base = space(uniform(1, std::min<std::size_t>(bounds_.max_outcomes, 6)));
  for (const auto& [x, mass] : inst.weights) {
    inst.family.emplace(x, VariablePair{variable(base, "y"), variable(base, "z")});
  }
  return inst;
}

PullbackInstance InstanceGenerator::pullback() {
  auto s = space(uniform(1, std::min<std::size_t>(bounds_.max_outcomes, 6)));
  auto x = variable(s, "x");
  auto y = variable(s, "y");
  switch (uniform(0, 3)) {
    case 0:
      return {x, y, projection_map(s, space(uniform(1, 3)), Side::left)};
    case 1:
      return {x, y, projection_map(space(uniform(1, 3)), s, Side::right)};
    case 2:
      return {x, y, halving_refinement(s)};
    default: {
      std::vector<std::vector<Rational>> parts;
      for (std::size_t i = 0; i < s->size(); ++i) parts.push_back(weights(uniform(1, 3), true));
      return {x, y, refinement_map(s, parts)};
    }
  }
}

SequenceInstance InstanceGenerator::sequence() {
  SequenceInstance inst;
  const std::size_t nr = uniform(1, std::min<std::size_t>(bounds_.max_alphabet, 3));
  const std::size_t nc = uniform(1, std::min<std::size_t>(bounds_.max_alphabet, 3));
  inst.rows = numbered("x", nr);
  inst.cols = numbered("y", nc);
  std::vector<Rational> limit;
  if (chance(1.0 / 3.0)) {
    auto r = weights(nr, true);
    auto c = weights(nc, true);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) limit.push_back(r[i] * c[j]);
    }
  } else {
    limit = weights(nr * nc, true);
  }
  const auto target = weights(nr * nc, false);
  for (std::size_t k = 0; k < limit.size(); ++k) {
    inst.cells.emplace_back(std::vector<Rational>{limit[k], target[k] - limit[k]});
  }
  inst.stabilization_index = 1;
  return inst;
}

}  // namespace infoax
