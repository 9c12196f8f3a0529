#include "infoax/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "infoax/errors.hpp"

namespace infoax {

namespace {

double log_in_base(double v, double base) {
  if (base == 2.0) return std::log2(v);
  if (base == 10.0) return std::log10(v);
  if (base == std::numbers::e) return std::log(v);
  return std::log(v) / std::log(base);
}

}  // namespace

Bits entropy(std::span<const Rational> masses, double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InvalidBase("logarithm base must be a finite number greater than 1");
  }
  std::vector<double> p;
  p.reserve(masses.size());
  for (const auto& m : masses) {
    if (!m.is_zero()) p.push_back(m.to_double());
  }
  std::sort(p.begin(), p.end());
  double h = 0.0;
  for (double v : p) h -= v * log_in_base(v, base);
  // A point mass gives -1*log(1) = -0.0.
  return h == 0.0 ? 0.0 : h;
}

Bits entropy(const Pmf& p, double base) {
  std::vector<Rational> masses;
  masses.reserve(p.size());
  for (const auto& [label, value] : p) masses.push_back(value);
  return entropy(masses, base);
}

Bits entropy(const FiniteRandomVariable& x, double base) {
  return entropy(x.pmf_values(), base);
}

Bits joint_entropy(const FiniteRandomVariable& x, const FiniteRandomVariable& y, double base) {
  return entropy(joint_table(x, y).cells(), base);
}

ConditionalKernel::ConditionalKernel(const JointTable& joint)
    : given_(joint.rows()), out_(joint.cols()), rows_(joint.cells()) {
  given_mass_.resize(given_.size());
  for (std::size_t g = 0; g < given_.size(); ++g) {
    for (std::size_t o = 0; o < out_.size(); ++o) given_mass_[g] += joint.at(g, o);
    if (given_mass_[g].is_zero()) continue;  // row already identically zero
    for (std::size_t o = 0; o < out_.size(); ++o) rows_[g * out_.size() + o] /= given_mass_[g];
  }
}

Rational ConditionalKernel::value(std::string_view out, std::string_view given) const {
  auto g = std::lower_bound(given_.begin(), given_.end(), given);
  auto o = std::lower_bound(out_.begin(), out_.end(), out);
  if (g == given_.end() || *g != given || o == out_.end() || *o != out) return Rational();
  return at(static_cast<std::size_t>(g - given_.begin()), static_cast<std::size_t>(o - out_.begin()));
}

Pmf ConditionalKernel::row(std::string_view given) const {
  Pmf out;
  for (const auto& label : out_) out.emplace(label, value(label, given));
  return out;
}

ConditionalKernel conditional_kernel(const FiniteRandomVariable& x, const FiniteRandomVariable& y) {
  return ConditionalKernel(joint_table(x, y));
}

Bits conditional_entropy(const FiniteRandomVariable& x, const FiniteRandomVariable& y,
                         double base) {
  const ConditionalKernel kernel = conditional_kernel(x, y);
  const std::size_t width = kernel.out_alphabet().size();
  double h = 0.0;
  for (std::size_t g = 0; g < kernel.given_alphabet().size(); ++g) {
    const Rational& mass = kernel.given_mass()[g];
    if (mass.is_zero()) continue;
    std::span<const Rational> row(&kernel.at(g, 0), width);
    h += mass.to_double() * entropy(row, base);
  }
  return h;
}

Bits mutual_information(const FiniteRandomVariable& x, const FiniteRandomVariable& y,
                        double base) {
  const Bits hxy = joint_entropy(x, y, base);
  return (entropy(x, base) + entropy(y, base)) - hxy;
}

Bits mutual_information(const JointTable& joint, double base) {
  const Bits hxy = entropy(joint.cells(), base);
  return (entropy(joint.row_marginal(), base) + entropy(joint.col_marginal(), base)) - hxy;
}

}  // namespace infoax
