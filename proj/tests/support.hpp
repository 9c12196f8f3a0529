#pragma once

// Fixtures and slow reference implementations shared by the test binaries.
// The oracles work from outcome weights directly and never call into the
// measures or markov modules.

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "infoax/prob_core.hpp"

namespace infoax::testing {

inline SpacePtr three_point_space() {
  return make_space({"w1", "w2", "w3"}, {Rational(1, 6), Rational(1, 3), Rational(1, 2)});
}

struct ThreePoint {
  SpacePtr space = three_point_space();
  FiniteRandomVariable x{space, std::vector<Label>{"a", "a", "b"}};
  FiniteRandomVariable y{space, std::vector<Label>{"u", "v", "v"}};
};

inline FiniteRandomVariable fair_coin() {
  return FiniteRandomVariable(uniform_space(2), std::vector<Label>{"h", "t"});
}

struct IndependentCoins {
  SpacePtr space = uniform_space(4);
  FiniteRandomVariable x{space, std::vector<Label>{"h", "h", "t", "t"}};
  FiniteRandomVariable y{space, std::vector<Label>{"h", "t", "h", "t"}};
};

inline Pmf oracle_pmf(const FiniteRandomVariable& v) {
  Pmf out;
  const auto& s = *v.space();
  for (std::size_t i = 0; i < s.size(); ++i) out[v.label_at(i)] += s.weight(i);
  return out;
}

using PairKey = std::pair<Label, Label>;

inline std::map<PairKey, Rational> oracle_joint(const FiniteRandomVariable& x,
                                                const FiniteRandomVariable& y) {
  std::map<PairKey, Rational> out;
  const auto& s = *x.space();
  for (std::size_t i = 0; i < s.size(); ++i) out[{x.label_at(i), y.label_at(i)}] += s.weight(i);
  return out;
}

inline long double oracle_entropy(const Pmf& p) {
  long double h = 0;
  for (const auto& [label, mass] : p) {
    const long double v = mass.to_double();
    if (v > 0) h -= v * std::log2(v);
  }
  return h;
}

// Σ ϑ(x,y) log ϑ(x,y) / (p(x)q(y)), a different formula from H(X)+H(Y)−H(X,Y).
inline long double oracle_mutual_information(const FiniteRandomVariable& x,
                                             const FiniteRandomVariable& y) {
  const auto px = oracle_pmf(x);
  const auto py = oracle_pmf(y);
  long double out = 0;
  for (const auto& [key, mass] : oracle_joint(x, y)) {
    if (mass.is_zero()) continue;
    const long double j = mass.to_double();
    const long double ratio = (mass / (px.at(key.first) * py.at(key.second))).to_double();
    out += j * std::log2(ratio);
  }
  return out;
}

// P(B = b | A = a), zero when P(A = a) = 0.
inline Rational oracle_conditional(const FiniteRandomVariable& a, const Label& a_label,
                                   const FiniteRandomVariable& b, const Label& b_label) {
  const auto& s = *a.space();
  Rational both, given;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (a.label_at(i) != a_label) continue;
    given += s.weight(i);
    if (b.label_at(i) == b_label) both += s.weight(i);
  }
  return given.is_zero() ? Rational(0) : both / given;
}

// Enumerates all |Y|^(|Z||X|) functions h: Z×X → Y.
inline bool brute_force_has_mediator(const FiniteRandomVariable& x, const FiniteRandomVariable& y,
                                     const FiniteRandomVariable& z) {
  const auto& xs = x.alphabet();
  const auto& ys = y.alphabet();
  const auto& zs = z.alphabet();
  const std::size_t cells = xs.size() * zs.size();
  std::vector<std::size_t> choice(cells, 0);
  while (true) {
    bool ok = true;
    for (std::size_t c = 0; c < cells && ok; ++c) {
      const Label& zl = zs[c / xs.size()];
      const Label& xl = xs[c % xs.size()];
      const Label& yl = ys[choice[c]];
      ok = oracle_conditional(x, xl, z, zl) ==
           oracle_conditional(y, yl, z, zl) * oracle_conditional(x, xl, y, yl);
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < cells && ++choice[k] == ys.size()) choice[k++] = 0;
    if (k == cells) return false;
  }
}

}  // namespace infoax::testing
