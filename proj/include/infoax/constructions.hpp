#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "infoax/measures.hpp"
#include "infoax/prob_core.hpp"

namespace infoax {

// ---------------------------------------------------------------------------
// Convex sums

/// The space X×Ω with outcome "(x,ω)" weighted p(x)·μ(ω).
SpacePtr mixture_space(const Pmf& p, const SampleSpace& base);

/// p-weighted convex sum: on the mixture space, (x̃,ω) ↦ (x̃, Y^x̃(ω)). The tag
/// realizes the disjoint union of the member alphabets, so the pmf is
/// r(x,y) = p(x)·q^x(y).
///
/// Throws NotAPmf if p is not a distribution, AlphabetMismatch if the family
/// is not indexed by exactly the labels of p, and DomainMismatch unless all
/// members share one sample space (pull back first if they do not).
FiniteRandomVariable convex_sum(const Pmf& p, const std::map<Label, FiniteRandomVariable>& family);

using VariablePair = std::pair<FiniteRandomVariable, FiniteRandomVariable>;

/// (⊕ p(x)Y^x, ⊕ p(x)Z^x) on one shared mixture space.
VariablePair convex_sum_pairs(const Pmf& p, const std::map<Label, VariablePair>& family);

/// Result of evaluating both sides of
///   ⊕ p(x) P(Y^x,Z^x)  =  P(⊕ p(x)Y^x, ⊕ p(x)Z^x)
/// at every outcome of the mixture space. The right-hand labels
/// ((x,y),(x,z)) are carried to (x,(y,z)) by the canonical bijection before
/// comparing.
struct ConvexProductComparison {
  std::size_t outcomes_checked = 0;
  std::size_t mismatches = 0;
  bool equal() const { return mismatches == 0; }
};

ConvexProductComparison compare_convex_product(const Pmf& p,
                                               const std::map<Label, VariablePair>& family);

// ---------------------------------------------------------------------------
// Relabelings

/// A validated bijection between two alphabets.
class Relabeling {
 public:
  explicit Relabeling(std::map<Label, Label> mapping);

  static Relabeling identity(const std::vector<Label>& alphabet);

  std::vector<Label> source_alphabet() const;
  std::vector<Label> target_alphabet() const;
  const Label& operator()(const Label& source) const;
  Relabeling inverse() const;
  const std::map<Label, Label>& mapping() const { return forward_; }

 private:
  std::map<Label, Label> forward_;
};

/// f∘X. Throws AlphabetMismatch unless f is defined on exactly X's alphabet.
FiniteRandomVariable relabel(const FiniteRandomVariable& x, const Relabeling& f);

/// φ∘X for an arbitrary (not necessarily injective) function on X's
/// alphabet. The result's alphabet is the image of φ.
FiniteRandomVariable map_labels(const FiniteRandomVariable& x, const std::map<Label, Label>& phi);

// ---------------------------------------------------------------------------
// Weak convergence

/// Σ_k coefficient[k] / n^k, evaluated exactly.
class InversePolynomial {
 public:
  InversePolynomial() = default;
  explicit InversePolynomial(std::vector<Rational> coefficients);

  Rational operator()(std::uint64_t n) const;
  /// Value as n → ∞, i.e. the constant coefficient.
  Rational limit() const;
  const std::vector<Rational>& coefficients() const { return coefficients_; }

 private:
  std::vector<Rational> coefficients_;
};

/// A sequence of pmfs p_n, required to be a distribution on exactly
/// limit_alphabet from stabilization_index on. The generator must be pure.
struct PmfSequence {
  std::vector<Label> limit_alphabet;
  std::function<Pmf(std::uint64_t)> generator;
  std::uint64_t stabilization_index = 1;
};

/// A sequence of joint tables ϑ_n, i.e. the pmfs of the canonical products
/// P(X_n, Y_n). Same contract as PmfSequence.
struct JointSequence {
  std::vector<Label> rows;
  std::vector<Label> cols;
  std::function<JointTable(std::uint64_t)> generator;
  std::uint64_t stabilization_index = 1;
};

/// Joint sequence with cell (r,c) given by cells[r*cols+c](n).
JointSequence inverse_polynomial_sequence(std::vector<Label> rows, std::vector<Label> cols,
                                          std::vector<InversePolynomial> cells,
                                          std::uint64_t stabilization_index);
/// The table at n → ∞ for a sequence built by inverse_polynomial_sequence.
JointTable inverse_polynomial_limit(const std::vector<Label>& rows, const std::vector<Label>& cols,
                                    const std::vector<InversePolynomial>& cells);

struct ConvergenceProbe {
  std::uint64_t n = 0;
  Rational max_deviation;  // max_x |p_n(x) − p(x)|
  double entropy_gap = 0;  // |H(p_n) − H(p)|
  std::optional<double> information_gap;  // |I_n − I| for pair sequences
};

/// Finite-probe evidence of convergence. Probes run at n, 2n, 4n; the report
/// supports (it cannot prove) convergence when the deviation at n is within
/// tolerance and the deviations do not increase along the schedule.
struct ConvergenceReport {
  std::vector<ConvergenceProbe> probes;
  double tolerance = 0;
  bool within_tolerance = false;
  bool monotone = false;

  const ConvergenceProbe& at_probe() const { return probes.front(); }
};

ConvergenceReport check_weak_convergence(const PmfSequence& seq, const Pmf& limit, double tol,
                                         std::uint64_t n_probe);
ConvergenceReport check_weak_convergence(const JointSequence& seq, const JointTable& limit,
                                         double tol, std::uint64_t n_probe);

}  // namespace infoax
