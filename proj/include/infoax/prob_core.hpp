#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoax/rational.hpp"

namespace infoax {

// Outcome identifiers and alphabet labels are opaque strings, totally
// ordered lexicographically. Composite labels produced by the library
// (canonical products, convex-sum tags, product outcomes) have the form
// "(a,b)"; atomic labels should therefore avoid '(', ')' and ','.
using Label = std::string;
using Pmf = std::map<Label, Rational>;

std::string pair_label(std::string_view first, std::string_view second);

/// Splits a composite "(a,b)" label at its top-level comma. Returns nullopt
/// for atomic labels.
std::optional<std::pair<std::string, std::string>> split_pair_label(std::string_view label);

/// True for non-empty atomic labels free of reserved characters and for
/// composite labels whose components are themselves well formed.
bool is_well_formed_label(std::string_view label);

/// Throws NotAPmf unless every value is non-negative and the values sum to 1.
void require_pmf(const Pmf& p);

/// A finite outcome set with an exact probability measure on its power set.
/// Outcomes are kept in lexicographic order; zero weights are allowed.
class SampleSpace {
 public:
  /// Outcomes need not be sorted on input. Throws ValidationError on
  /// duplicates, size mismatch, negative weights or a total other than 1.
  SampleSpace(std::vector<std::string> outcomes, std::vector<Rational> weights);

  std::size_t size() const { return outcomes_.size(); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::string& outcome(std::size_t i) const { return outcomes_[i]; }
  const Rational& weight(std::size_t i) const { return weights_[i]; }
  std::optional<std::size_t> index_of(std::string_view outcome) const;

  friend bool operator==(const SampleSpace&, const SampleSpace&) = default;

 private:
  std::vector<std::string> outcomes_;
  std::vector<Rational> weights_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

SpacePtr make_space(std::vector<std::string> outcomes, std::vector<Rational> weights);
/// n equally likely outcomes named prefix0, prefix1, ...
SpacePtr uniform_space(std::size_t n, std::string_view prefix = "w");

/// Pointer identity or structural equality.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// A surjective map from a sample space onto a finite alphabet.
///
/// The alphabet is stored sorted; each outcome carries the index of its
/// label. Surjectivity is over all outcomes, including zero-weight ones.
class FiniteRandomVariable {
 public:
  /// Labels aligned with space->outcomes(); the alphabet is their image.
  FiniteRandomVariable(SpacePtr space, std::vector<Label> labels_by_outcome);

  /// Declared alphabet; throws ValidationError if some label is never hit or
  /// an outcome maps outside the alphabet.
  FiniteRandomVariable(SpacePtr space, std::vector<Label> alphabet,
                       std::vector<Label> labels_by_outcome);

  /// Assignment keyed by outcome identifier; must be total.
  FiniteRandomVariable(SpacePtr space, const std::map<std::string, Label>& assignment);

  static FiniteRandomVariable constant(SpacePtr space, Label label = "*");
  /// The variable sending each outcome to its own identifier.
  static FiniteRandomVariable identity(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<Label>& alphabet() const { return alphabet_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }
  /// Alphabet index of the label assigned to outcome i.
  std::size_t code(std::size_t outcome_index) const { return codes_[outcome_index]; }
  const std::vector<std::uint32_t>& codes() const { return codes_; }
  const Label& label_at(std::size_t outcome_index) const { return alphabet_[codes_[outcome_index]]; }
  std::optional<std::size_t> label_index(std::string_view label) const;
  bool is_constant() const { return alphabet_.size() == 1; }

  /// pmf values aligned with alphabet().
  std::vector<Rational> pmf_values() const;

 private:
  FiniteRandomVariable(SpacePtr space, std::vector<Label> alphabet,
                       std::vector<std::uint32_t> codes);
  SpacePtr space_;
  std::vector<Label> alphabet_;
  std::vector<std::uint32_t> codes_;
};

Pmf pmf(const FiniteRandomVariable& x);

/// Exact joint distribution over rows x cols, stored row-major.
class JointTable {
 public:
  /// Labels need not be sorted; cells follow the given label order. Throws
  /// ValidationError on shape mismatch, duplicates, negative cells or a
  /// total other than 1.
  JointTable(std::vector<Label> rows, std::vector<Label> cols, std::vector<Rational> cells);

  const std::vector<Label>& rows() const { return rows_; }
  const std::vector<Label>& cols() const { return cols_; }
  const std::vector<Rational>& cells() const { return cells_; }
  const Rational& at(std::size_t row, std::size_t col) const { return cells_[row * cols_.size() + col]; }
  /// Zero for labels outside the table.
  Rational at(std::string_view row, std::string_view col) const;

  Pmf row_marginal() const;
  Pmf col_marginal() const;
  JointTable transposed() const;

  friend bool operator==(const JointTable&, const JointTable&) = default;

 private:
  std::vector<Label> rows_;
  std::vector<Label> cols_;
  std::vector<Rational> cells_;
};

JointTable joint_table(const FiniteRandomVariable& x, const FiniteRandomVariable& y);

/// ω ↦ (X(ω), Y(ω)). The alphabet is the set of pairs actually hit, which
/// keeps the result surjective when some joint cell is empty.
FiniteRandomVariable canonical_product(const FiniteRandomVariable& x, const FiniteRandomVariable& y);

/// Expands a joint table into the space rows×cols (outcome "(x,y)" weighted
/// by its cell) with the two coordinate variables.
std::pair<FiniteRandomVariable, FiniteRandomVariable> coordinate_variables(const JointTable& table);

/// The identity variable on the weighted set (labels of p, p).
FiniteRandomVariable canonical_variable(const Pmf& p);

class MeasurePreservingMap {
 public:
  /// mapping[i] is the target index of source outcome i. Throws
  /// ValidationError unless every target weight equals the source weight of
  /// its preimage.
  MeasurePreservingMap(SpacePtr source, SpacePtr target, std::vector<std::size_t> mapping);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  std::size_t operator()(std::size_t source_index) const { return mapping_[source_index]; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<std::size_t> mapping_;
};

/// X∘π. Labels with an empty preimage under π (possible only for labels
/// carried solely by zero-weight outcomes) drop out of the alphabet.
FiniteRandomVariable pull_back(const FiniteRandomVariable& x, const MeasurePreservingMap& pi);

SpacePtr product_space(const SampleSpace& a, const SampleSpace& b);

enum class Side { left, right };

/// Projection out of product_space(a, b) onto a (left) or b (right).
MeasurePreservingMap projection_map(const SpacePtr& a, const SpacePtr& b, Side which);

MeasurePreservingMap identity_map(const SpacePtr& space);

/// Splits outcome i into parts[i].size() outcomes "(ω,k)" whose weights are
/// weight(ω)·parts[i][k]. Each parts[i] must sum to 1.
MeasurePreservingMap refinement_map(const SpacePtr& space,
                                    const std::vector<std::vector<Rational>>& parts);

/// Every outcome split into two halves of equal weight.
MeasurePreservingMap halving_refinement(const SpacePtr& space);

}  // namespace infoax
