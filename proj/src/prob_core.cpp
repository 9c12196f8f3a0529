#include "infoax/prob_core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "infoax/errors.hpp"

namespace infoax {

namespace {

bool has_reserved_char(std::string_view s) {
  return s.find_first_of("(),") != std::string_view::npos;
}

// Sorts labels and returns the permutation that was applied.
std::vector<std::size_t> sorted_order(const std::vector<std::string>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  return order;
}

void require_unique_sorted(const std::vector<std::string>& sorted, std::string_view what) {
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw ValidationError("duplicate " + std::string(what) + " '" + *dup + "'");
  }
}

void require_distribution(const std::vector<Rational>& values, std::string_view what) {
  Rational total;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].is_negative()) {
      throw ValidationError(std::string(what) + "[" + std::to_string(i) + "] is negative (" +
                            values[i].str() + ")");
    }
    total += values[i];
  }
  if (total != Rational(1)) {
    throw ValidationError(std::string(what) + " sum to " + total.str() + ", expected 1/1");
  }
}

}  // namespace

std::string pair_label(std::string_view first, std::string_view second) {
  std::string out;
  out.reserve(first.size() + second.size() + 3);
  out += '(';
  out += first;
  out += ',';
  out += second;
  out += ')';
  return out;
}

std::optional<std::pair<std::string, std::string>> split_pair_label(std::string_view label) {
  if (label.size() < 5 || label.front() != '(' || label.back() != ')') return std::nullopt;
  const std::string_view inner = label.substr(1, label.size() - 2);
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const char c = inner[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) return std::nullopt;
    } else if (c == ',' && depth == 0) {
      if (i == 0 || i + 1 == inner.size()) return std::nullopt;
      return std::make_pair(std::string(inner.substr(0, i)), std::string(inner.substr(i + 1)));
    }
  }
  return std::nullopt;
}

bool is_well_formed_label(std::string_view label) {
  if (label.empty()) return false;
  if (!has_reserved_char(label)) return true;
  auto parts = split_pair_label(label);
  return parts && is_well_formed_label(parts->first) && is_well_formed_label(parts->second);
}

void require_pmf(const Pmf& p) {
  if (p.empty()) throw NotAPmf("empty distribution");
  Rational total;
  for (const auto& [label, value] : p) {
    if (value.is_negative()) throw NotAPmf("negative mass at '" + label + "'");
    total += value;
  }
  if (total != Rational(1)) throw NotAPmf("masses sum to " + total.str());
}

// ---------------------------------------------------------------------------
// SampleSpace

SampleSpace::SampleSpace(std::vector<std::string> outcomes, std::vector<Rational> weights) {
  if (outcomes.size() != weights.size()) {
    throw ValidationError("space has " + std::to_string(outcomes.size()) + " outcomes but " +
                          std::to_string(weights.size()) + " weights");
  }
  if (outcomes.empty()) throw ValidationError("space has no outcomes");
  const auto order = sorted_order(outcomes);
  outcomes_.reserve(order.size());
  weights_.reserve(order.size());
  for (std::size_t i : order) {
    outcomes_.push_back(std::move(outcomes[i]));
    weights_.push_back(std::move(weights[i]));
  }
  require_unique_sorted(outcomes_, "outcome");
  require_distribution(weights_, "weights");
}

std::optional<std::size_t> SampleSpace::index_of(std::string_view outcome) const {
  auto it = std::lower_bound(outcomes_.begin(), outcomes_.end(), outcome);
  if (it == outcomes_.end() || *it != outcome) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes_.begin());
}

SpacePtr make_space(std::vector<std::string> outcomes, std::vector<Rational> weights) {
  return std::make_shared<const SampleSpace>(std::move(outcomes), std::move(weights));
}

SpacePtr uniform_space(std::size_t n, std::string_view prefix) {
  std::vector<std::string> outcomes;
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < n; ++i) {
    outcomes.push_back(std::string(prefix) + std::to_string(i));
    weights.emplace_back(1, static_cast<long>(n));
  }
  return make_space(std::move(outcomes), std::move(weights));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// FiniteRandomVariable

FiniteRandomVariable::FiniteRandomVariable(SpacePtr space, std::vector<Label> alphabet,
                                           std::vector<std::uint32_t> codes)
    : space_(std::move(space)), alphabet_(std::move(alphabet)), codes_(std::move(codes)) {}

FiniteRandomVariable::FiniteRandomVariable(SpacePtr space, std::vector<Label> labels_by_outcome)
    : space_(std::move(space)) {
  if (!space_) throw ValidationError("random variable without a sample space");
  if (labels_by_outcome.size() != space_->size()) {
    throw ValidationError("assignment covers " + std::to_string(labels_by_outcome.size()) +
                          " of " + std::to_string(space_->size()) + " outcomes");
  }
  alphabet_ = labels_by_outcome;
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  codes_.reserve(labels_by_outcome.size());
  for (const auto& label : labels_by_outcome) {
    codes_.push_back(static_cast<std::uint32_t>(
        std::lower_bound(alphabet_.begin(), alphabet_.end(), label) - alphabet_.begin()));
  }
}

FiniteRandomVariable::FiniteRandomVariable(SpacePtr space, std::vector<Label> alphabet,
                                           std::vector<Label> labels_by_outcome)
    : FiniteRandomVariable(std::move(space), std::move(labels_by_outcome)) {
  std::sort(alphabet.begin(), alphabet.end());
  require_unique_sorted(alphabet, "alphabet label");
  for (const auto& label : alphabet_) {
    if (!std::binary_search(alphabet.begin(), alphabet.end(), label)) {
      throw ValidationError("outcome mapped to '" + label + "', which is outside the alphabet");
    }
  }
  for (const auto& label : alphabet) {
    if (!std::binary_search(alphabet_.begin(), alphabet_.end(), label)) {
      throw ValidationError("alphabet label '" + label + "' is never hit (not surjective)");
    }
  }
}

FiniteRandomVariable::FiniteRandomVariable(SpacePtr space,
                                           const std::map<std::string, Label>& assignment)
    : FiniteRandomVariable(space, [&] {
        if (!space) throw ValidationError("random variable without a sample space");
        std::vector<Label> labels;
        labels.reserve(space->size());
        for (const auto& outcome : space->outcomes()) {
          auto it = assignment.find(outcome);
          if (it == assignment.end()) {
            throw ValidationError("assignment is not total: outcome '" + outcome + "' unmapped");
          }
          labels.push_back(it->second);
        }
        for (const auto& [outcome, label] : assignment) {
          if (!space->index_of(outcome)) {
            throw ValidationError("assignment mentions unknown outcome '" + outcome + "'");
          }
        }
        return labels;
      }()) {}

FiniteRandomVariable FiniteRandomVariable::constant(SpacePtr space, Label label) {
  const std::size_t n = space->size();
  return FiniteRandomVariable(std::move(space), {std::move(label)},
                              std::vector<std::uint32_t>(n, 0));
}

FiniteRandomVariable FiniteRandomVariable::identity(SpacePtr space) {
  std::vector<std::uint32_t> codes(space->size());
  std::iota(codes.begin(), codes.end(), std::uint32_t{0});
  auto alphabet = space->outcomes();
  return FiniteRandomVariable(std::move(space), std::move(alphabet), std::move(codes));
}

std::optional<std::size_t> FiniteRandomVariable::label_index(std::string_view label) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet_.begin());
}

std::vector<Rational> FiniteRandomVariable::pmf_values() const {
  std::vector<Rational> values(alphabet_.size());
  for (std::size_t i = 0; i < codes_.size(); ++i) values[codes_[i]] += space_->weight(i);
  return values;
}

Pmf pmf(const FiniteRandomVariable& x) {
  Pmf out;
  auto values = x.pmf_values();
  for (std::size_t i = 0; i < values.size(); ++i) out.emplace(x.alphabet()[i], std::move(values[i]));
  return out;
}

// ---------------------------------------------------------------------------
// JointTable

JointTable::JointTable(std::vector<Label> rows, std::vector<Label> cols,
                       std::vector<Rational> cells) {
  if (rows.empty() || cols.empty()) throw ValidationError("joint table needs rows and columns");
  if (cells.size() != rows.size() * cols.size()) {
    throw ValidationError("joint table has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(rows.size() * cols.size()));
  }
  const auto row_order = sorted_order(rows);
  const auto col_order = sorted_order(cols);
  for (std::size_t r : row_order) rows_.push_back(rows[r]);
  for (std::size_t c : col_order) cols_.push_back(cols[c]);
  require_unique_sorted(rows_, "row label");
  require_unique_sorted(cols_, "column label");
  cells_.reserve(cells.size());
  for (std::size_t r : row_order) {
    for (std::size_t c : col_order) cells_.push_back(std::move(cells[r * cols.size() + c]));
  }
  require_distribution(cells_, "cells");
}

Rational JointTable::at(std::string_view row, std::string_view col) const {
  auto r = std::lower_bound(rows_.begin(), rows_.end(), row);
  auto c = std::lower_bound(cols_.begin(), cols_.end(), col);
  if (r == rows_.end() || *r != row || c == cols_.end() || *c != col) return Rational();
  return at(static_cast<std::size_t>(r - rows_.begin()), static_cast<std::size_t>(c - cols_.begin()));
}

Pmf JointTable::row_marginal() const {
  Pmf out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational sum;
    for (std::size_t c = 0; c < cols_.size(); ++c) sum += at(r, c);
    out.emplace(rows_[r], std::move(sum));
  }
  return out;
}

Pmf JointTable::col_marginal() const {
  Pmf out;
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    Rational sum;
    for (std::size_t r = 0; r < rows_.size(); ++r) sum += at(r, c);
    out.emplace(cols_[c], std::move(sum));
  }
  return out;
}

JointTable JointTable::transposed() const {
  std::vector<Rational> cells;
  cells.reserve(cells_.size());
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    for (std::size_t r = 0; r < rows_.size(); ++r) cells.push_back(at(r, c));
  }
  return JointTable(cols_, rows_, std::move(cells));
}

JointTable joint_table(const FiniteRandomVariable& x, const FiniteRandomVariable& y) {
  if (!same_space(x.space(), y.space())) {
    throw DomainMismatch("joint_table: variables live on different sample spaces");
  }
  const std::size_t ny = y.alphabet_size();
  std::vector<Rational> cells(x.alphabet_size() * ny);
  const auto& space = *x.space();
  for (std::size_t i = 0; i < space.size(); ++i) cells[x.code(i) * ny + y.code(i)] += space.weight(i);
  return JointTable(x.alphabet(), y.alphabet(), std::move(cells));
}

FiniteRandomVariable canonical_product(const FiniteRandomVariable& x,
                                       const FiniteRandomVariable& y) {
  if (!same_space(x.space(), y.space())) {
    throw DomainMismatch("canonical_product: variables live on different sample spaces");
  }
  std::vector<Label> labels;
  labels.reserve(x.space()->size());
  for (std::size_t i = 0; i < x.space()->size(); ++i) {
    labels.push_back(pair_label(x.label_at(i), y.label_at(i)));
  }
  return FiniteRandomVariable(x.space(), std::move(labels));
}

std::pair<FiniteRandomVariable, FiniteRandomVariable> coordinate_variables(const JointTable& table) {
  std::vector<std::string> outcomes;
  std::vector<Label> row_labels;
  std::vector<Label> col_labels;
  for (const auto& r : table.rows()) {
    for (const auto& c : table.cols()) {
      outcomes.push_back(pair_label(r, c));
      row_labels.push_back(r);
      col_labels.push_back(c);
    }
  }
  // Outcomes "(r,c)" are generated in row-major order, which is not always
  // their lexicographic order, so go through the outcome-keyed constructor.
  std::map<std::string, Label> xs;
  std::map<std::string, Label> ys;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    xs.emplace(outcomes[i], row_labels[i]);
    ys.emplace(outcomes[i], col_labels[i]);
  }
  auto space = make_space(std::move(outcomes), table.cells());
  return {FiniteRandomVariable(space, xs), FiniteRandomVariable(space, ys)};
}

FiniteRandomVariable canonical_variable(const Pmf& p) {
  require_pmf(p);
  std::vector<std::string> outcomes;
  std::vector<Rational> weights;
  for (const auto& [label, value] : p) {
    outcomes.push_back(label);
    weights.push_back(value);
  }
  return FiniteRandomVariable::identity(make_space(std::move(outcomes), std::move(weights)));
}

// ---------------------------------------------------------------------------
// Measure-preserving maps

MeasurePreservingMap::MeasurePreservingMap(SpacePtr source, SpacePtr target,
                                           std::vector<std::size_t> mapping)
    : source_(std::move(source)), target_(std::move(target)), mapping_(std::move(mapping)) {
  if (!source_ || !target_) throw ValidationError("measure-preserving map needs both spaces");
  if (mapping_.size() != source_->size()) {
    throw ValidationError("map is not total on its source space");
  }
  std::vector<Rational> mass(target_->size());
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (mapping_[i] >= target_->size()) throw ValidationError("map points outside its target");
    mass[mapping_[i]] += source_->weight(i);
  }
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (mass[j] != target_->weight(j)) {
      throw ValidationError("map is not measure-preserving at '" + target_->outcome(j) +
                            "': preimage mass " + mass[j].str() + " vs weight " +
                            target_->weight(j).str());
    }
  }
}

FiniteRandomVariable pull_back(const FiniteRandomVariable& x, const MeasurePreservingMap& pi) {
  if (!same_space(x.space(), pi.target())) {
    throw DomainMismatch("pull_back: map target is not the variable's sample space");
  }
  std::vector<Label> labels;
  labels.reserve(pi.source()->size());
  for (std::size_t i = 0; i < pi.source()->size(); ++i) labels.push_back(x.label_at(pi(i)));
  return FiniteRandomVariable(pi.source(), std::move(labels));
}

SpacePtr product_space(const SampleSpace& a, const SampleSpace& b) {
  std::vector<std::string> outcomes;
  std::vector<Rational> weights;
  outcomes.reserve(a.size() * b.size());
  weights.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      outcomes.push_back(pair_label(a.outcome(i), b.outcome(j)));
      weights.push_back(a.weight(i) * b.weight(j));
    }
  }
  return make_space(std::move(outcomes), std::move(weights));
}

MeasurePreservingMap projection_map(const SpacePtr& a, const SpacePtr& b, Side which) {
  auto product = product_space(*a, *b);
  std::vector<std::size_t> mapping(product->size());
  for (std::size_t k = 0; k < product->size(); ++k) {
    auto parts = split_pair_label(product->outcome(k));
    if (!parts) throw std::logic_error("product outcome is not a pair");
    mapping[k] = which == Side::left ? *a->index_of(parts->first) : *b->index_of(parts->second);
  }
  return MeasurePreservingMap(product, which == Side::left ? a : b, std::move(mapping));
}

MeasurePreservingMap identity_map(const SpacePtr& space) {
  std::vector<std::size_t> mapping(space->size());
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  return MeasurePreservingMap(space, space, std::move(mapping));
}

MeasurePreservingMap refinement_map(const SpacePtr& space,
                                    const std::vector<std::vector<Rational>>& parts) {
  if (parts.size() != space->size()) throw ValidationError("refinement needs one split per outcome");
  std::vector<std::string> outcomes;
  std::vector<Rational> weights;
  std::map<std::string, std::size_t> origin;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw ValidationError("refinement split with no parts");
    require_distribution(parts[i], "refinement fractions");
    for (std::size_t k = 0; k < parts[i].size(); ++k) {
      auto name = pair_label(space->outcome(i), std::to_string(k));
      origin.emplace(name, i);
      outcomes.push_back(std::move(name));
      weights.push_back(space->weight(i) * parts[i][k]);
    }
  }
  auto source = make_space(std::move(outcomes), std::move(weights));
  std::vector<std::size_t> mapping;
  mapping.reserve(source->size());
  for (const auto& outcome : source->outcomes()) mapping.push_back(origin.at(outcome));
  return MeasurePreservingMap(source, space, std::move(mapping));
}

MeasurePreservingMap halving_refinement(const SpacePtr& space) {
  return refinement_map(space, std::vector<std::vector<Rational>>(
                                   space->size(), {Rational(1, 2), Rational(1, 2)}));
}

}  // namespace infoax
