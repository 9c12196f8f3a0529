#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "infoax/corpus.hpp"
#include "infoax/measures.hpp"

namespace infoax {

/// Three variables on one sample space together with the kernels
/// q(y|x), p(z|y) and r(z|x).
class Triple {
 public:
  /// Throws DomainMismatch unless all three share a sample space.
  Triple(FiniteRandomVariable x, FiniteRandomVariable y, FiniteRandomVariable z);

  const FiniteRandomVariable& x() const { return x_; }
  const FiniteRandomVariable& y() const { return y_; }
  const FiniteRandomVariable& z() const { return z_; }
  const ConditionalKernel& q() const { return q_; }  // Y given X
  const ConditionalKernel& p() const { return p_; }  // Z given Y
  const ConditionalKernel& r() const { return r_; }  // Z given X

 private:
  FiniteRandomVariable x_, y_, z_;
  ConditionalKernel q_, p_, r_;
};

/// A table h: Z×X → Y.
class MediatorFunction {
 public:
  MediatorFunction() = default;
  /// Keyed by (z, x).
  explicit MediatorFunction(std::map<std::pair<Label, Label>, Label> table)
      : table_(std::move(table)) {}

  const std::map<std::pair<Label, Label>, Label>& table() const { return table_; }
  /// Throws AlphabetMismatch when (z, x) is not in the table.
  const Label& operator()(const Label& z, const Label& x) const;

  friend bool operator==(const MediatorFunction&, const MediatorFunction&) = default;

 private:
  std::map<std::pair<Label, Label>, Label> table_;
};

/// True iff r(z|x) = p(z|h(z,x))·q(h(z,x)|x) at every (z,x), exactly. Throws
/// AlphabetMismatch if h is not total on Z×X or takes a value outside Y.
bool verify_mediator(const Triple& t, const MediatorFunction& h);

/// C(z,x) = {y : p(z|y)·q(y|x) = r(z|x)}, as sorted Y-indices, for every cell
/// laid out z-major: cell (z,x) is at z*|X| + x.
std::vector<std::vector<std::size_t>> candidate_sets(const Triple& t);

/// The defining equation constrains each (z,x) cell independently, so a
/// mediator exists iff every candidate set is non-empty. Returns the mediator
/// taking the least label in each cell.
std::optional<MediatorFunction> find_mediator(const Triple& t);

inline bool is_markov_triangle(const Triple& t) { return find_mediator(t).has_value(); }

/// I(X,Z) − I(X,Y) − I(Y,Z) + I(Y,Y).
double weak_functoriality_residual(const Triple& t, double base = kBits);

/// H(Z|X) − H(Z|Y) − H(Y|X).
double chain_rule_residual(const Triple& t, double base = kBits);

enum class TriangleFamily {
  canonical_product,  // (X, P(X,Y), Y)
  relabeled_input,    // (X, f∘X, Y), f a bijection
  relabeled_output,   // (X, Y, g∘Y), g a bijection
  deterministic_chain // (X, φ∘X, ψ∘φ∘X)
};

std::string_view family_name(TriangleFamily family);
std::optional<TriangleFamily> parse_family(std::string_view name);

struct GeneratedTriangle {
  TriangleFamily family;
  Triple triple;
};

/// Draws a Markov triangle from one of the four constructive families
/// (chosen by the seed) and post-validates it with find_mediator.
GeneratedTriangle generate_markov_triangle(std::uint64_t seed, const CorpusBounds& bounds = {});
GeneratedTriangle generate_markov_triangle(std::uint64_t seed, const CorpusBounds& bounds,
                                           TriangleFamily family);
GeneratedTriangle generate_markov_triangle(InstanceGenerator& gen, TriangleFamily family);

/// Research mode: draw unrelated triples until one admits a mediator. Biased
/// toward small alphabets; returns nullopt after max_attempts.
std::optional<Triple> generate_triangle_by_rejection(std::uint64_t seed, const CorpusBounds& bounds,
                                                     std::size_t max_attempts = 1000);

}  // namespace infoax
