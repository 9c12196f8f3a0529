#pragma once

#include <span>
#include <vector>

#include "infoax/prob_core.hpp"

namespace infoax {

// Entropy-valued quantities. The unit follows the logarithm base: bits for
// base 2 (the default), nats for e, hartleys for 10.
using Bits = double;

inline constexpr double kBits = 2.0;

/// −Σ p log p over the given masses, skipping zeros (0·log 0 = 0). Terms are
/// accumulated in ascending order of mass, so the result depends only on the
/// multiset of masses: relabeling or transposing never changes a bit.
Bits entropy(std::span<const Rational> masses, double base = kBits);
Bits entropy(const Pmf& p, double base = kBits);
Bits entropy(const FiniteRandomVariable& x, double base = kBits);

Bits joint_entropy(const FiniteRandomVariable& x, const FiniteRandomVariable& y,
                   double base = kBits);

/// Row-stochastic table q(y|x) = ϑ(x,y)/p(x); rows with p(x) = 0 are zero.
class ConditionalKernel {
 public:
  explicit ConditionalKernel(const JointTable& joint);

  const std::vector<Label>& given_alphabet() const { return given_; }
  const std::vector<Label>& out_alphabet() const { return out_; }
  const Rational& at(std::size_t given, std::size_t out) const { return rows_[given * out_.size() + out]; }
  Rational value(std::string_view out, std::string_view given) const;
  Pmf row(std::string_view given) const;
  /// Marginal p(x) of the conditioning variable.
  const std::vector<Rational>& given_mass() const { return given_mass_; }

 private:
  std::vector<Label> given_;
  std::vector<Label> out_;
  std::vector<Rational> rows_;
  std::vector<Rational> given_mass_;
};

/// Kernel of Y given X.
ConditionalKernel conditional_kernel(const FiniteRandomVariable& x, const FiniteRandomVariable& y);

/// H(Y|X) = Σ_x p(x) H(q(·|x)).
Bits conditional_entropy(const FiniteRandomVariable& x, const FiniteRandomVariable& y,
                         double base = kBits);

/// I(X,Y) = (H(X) + H(Y)) − H(X,Y), evaluated in exactly that order.
Bits mutual_information(const FiniteRandomVariable& x, const FiniteRandomVariable& y,
                        double base = kBits);

/// Mutual information of the coordinate pair of a joint table; agrees bit for
/// bit with the variable overload on any pair with this joint table.
Bits mutual_information(const JointTable& joint, double base = kBits);

}  // namespace infoax
