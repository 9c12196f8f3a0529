#include "infoax/constructions.hpp"

#include <algorithm>
#include <set>

#include "infoax/errors.hpp"

namespace infoax {

namespace {

void require_family_keys(const Pmf& p, const std::vector<Label>& keys) {
  std::vector<Label> labels;
  for (const auto& [label, mass] : p) labels.push_back(label);
  if (labels != keys) {
    throw AlphabetMismatch("convex sum family is not indexed by the support of the weights");
  }
}

// Builds a variable on the mixture space from a per-(x, ω) label function.
template <typename LabelFn>
FiniteRandomVariable on_mixture(const SpacePtr& mixture, const Pmf& p, const SampleSpace& base,
                                LabelFn label_of) {
  std::vector<Label> labels(mixture->size());
  for (const auto& [x, mass] : p) {
    for (std::size_t w = 0; w < base.size(); ++w) {
      const auto idx = mixture->index_of(pair_label(x, base.outcome(w)));
      labels[*idx] = label_of(x, w);
    }
  }
  return FiniteRandomVariable(mixture, std::move(labels));
}

const SpacePtr& common_space(const std::vector<const FiniteRandomVariable*>& members) {
  const SpacePtr& first = members.front()->space();
  for (const auto* m : members) {
    if (!same_space(first, m->space())) {
      throw DomainMismatch("convex sum members live on different sample spaces");
    }
  }
  return first;
}

}  // namespace

SpacePtr mixture_space(const Pmf& p, const SampleSpace& base) {
  require_pmf(p);
  std::vector<std::string> outcomes;
  std::vector<Rational> weights;
  outcomes.reserve(p.size() * base.size());
  weights.reserve(p.size() * base.size());
  for (const auto& [x, mass] : p) {
    for (std::size_t w = 0; w < base.size(); ++w) {
      outcomes.push_back(pair_label(x, base.outcome(w)));
      weights.push_back(mass * base.weight(w));
    }
  }
  return make_space(std::move(outcomes), std::move(weights));
}

FiniteRandomVariable convex_sum(const Pmf& p, const std::map<Label, FiniteRandomVariable>& family) {
  require_pmf(p);
  std::vector<Label> keys;
  std::vector<const FiniteRandomVariable*> members;
  for (const auto& [x, y] : family) {
    keys.push_back(x);
    members.push_back(&y);
  }
  require_family_keys(p, keys);
  const SpacePtr& base = common_space(members);
  auto mixture = mixture_space(p, *base);
  return on_mixture(mixture, p, *base, [&](const Label& x, std::size_t w) {
    return pair_label(x, family.at(x).label_at(w));
  });
}

VariablePair convex_sum_pairs(const Pmf& p, const std::map<Label, VariablePair>& family) {
  require_pmf(p);
  std::vector<Label> keys;
  std::vector<const FiniteRandomVariable*> members;
  for (const auto& [x, yz] : family) {
    keys.push_back(x);
    members.push_back(&yz.first);
    members.push_back(&yz.second);
  }
  require_family_keys(p, keys);
  const SpacePtr& base = common_space(members);
  auto mixture = mixture_space(p, *base);
  auto y = on_mixture(mixture, p, *base, [&](const Label& x, std::size_t w) {
    return pair_label(x, family.at(x).first.label_at(w));
  });
  auto z = on_mixture(mixture, p, *base, [&](const Label& x, std::size_t w) {
    return pair_label(x, family.at(x).second.label_at(w));
  });
  return {std::move(y), std::move(z)};
}

ConvexProductComparison compare_convex_product(const Pmf& p,
                                               const std::map<Label, VariablePair>& family) {
  std::map<Label, FiniteRandomVariable> products;
  for (const auto& [x, yz] : family) products.emplace(x, canonical_product(yz.first, yz.second));
  const FiniteRandomVariable lhs = convex_sum(p, products);
  const auto [y_sum, z_sum] = convex_sum_pairs(p, family);
  const FiniteRandomVariable rhs = canonical_product(y_sum, z_sum);
  if (!same_space(lhs.space(), rhs.space())) {
    throw std::logic_error("convex product sides built on different spaces");
  }

  ConvexProductComparison result;
  for (std::size_t i = 0; i < lhs.space()->size(); ++i) {
    ++result.outcomes_checked;
    // ((x,y),(x',z)) -> (x,(y,z)) when x == x'
    std::optional<std::string> carried;
    if (auto outer = split_pair_label(rhs.label_at(i))) {
      auto left = split_pair_label(outer->first);
      auto right = split_pair_label(outer->second);
      if (left && right && left->first == right->first) {
        carried = pair_label(left->first, pair_label(left->second, right->second));
      }
    }
    if (!carried || *carried != lhs.label_at(i)) ++result.mismatches;
  }
  return result;
}

// ---------------------------------------------------------------------------

Relabeling::Relabeling(std::map<Label, Label> mapping) : forward_(std::move(mapping)) {
  if (forward_.empty()) throw ValidationError("relabeling of an empty alphabet");
  std::set<Label> image;
  for (const auto& [from, to] : forward_) {
    if (!image.insert(to).second) {
      throw ValidationError("relabeling is not injective: '" + to + "' hit twice");
    }
  }
}

Relabeling Relabeling::identity(const std::vector<Label>& alphabet) {
  std::map<Label, Label> m;
  for (const auto& a : alphabet) m.emplace(a, a);
  return Relabeling(std::move(m));
}

std::vector<Label> Relabeling::source_alphabet() const {
  std::vector<Label> out;
  for (const auto& [from, to] : forward_) out.push_back(from);
  return out;
}

std::vector<Label> Relabeling::target_alphabet() const {
  std::vector<Label> out;
  for (const auto& [from, to] : forward_) out.push_back(to);
  std::sort(out.begin(), out.end());
  return out;
}

const Label& Relabeling::operator()(const Label& source) const {
  auto it = forward_.find(source);
  if (it == forward_.end()) throw AlphabetMismatch("relabeling undefined at '" + source + "'");
  return it->second;
}

Relabeling Relabeling::inverse() const {
  std::map<Label, Label> back;
  for (const auto& [from, to] : forward_) back.emplace(to, from);
  return Relabeling(std::move(back));
}

FiniteRandomVariable relabel(const FiniteRandomVariable& x, const Relabeling& f) {
  if (f.source_alphabet() != x.alphabet()) {
    throw AlphabetMismatch("relabeling source alphabet differs from the variable's alphabet");
  }
  return map_labels(x, f.mapping());
}

FiniteRandomVariable map_labels(const FiniteRandomVariable& x, const std::map<Label, Label>& phi) {
  std::vector<const Label*> image(x.alphabet_size());
  for (std::size_t a = 0; a < x.alphabet_size(); ++a) {
    auto it = phi.find(x.alphabet()[a]);
    if (it == phi.end()) {
      throw AlphabetMismatch("function undefined at label '" + x.alphabet()[a] + "'");
    }
    image[a] = &it->second;
  }
  std::vector<Label> labels;
  labels.reserve(x.space()->size());
  for (std::size_t i = 0; i < x.space()->size(); ++i) labels.push_back(*image[x.code(i)]);
  return FiniteRandomVariable(x.space(), std::move(labels));
}

// ---------------------------------------------------------------------------

InversePolynomial::InversePolynomial(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {}

Rational InversePolynomial::operator()(std::uint64_t n) const {
  if (n == 0) throw ValidationError("inverse polynomial evaluated at n = 0");
  const Rational step(1, static_cast<long>(n));
  Rational power(1);
  Rational value;
  for (const auto& c : coefficients_) {
    value += c * power;
    power *= step;
  }
  return value;
}

Rational InversePolynomial::limit() const {
  return coefficients_.empty() ? Rational() : coefficients_.front();
}

JointSequence inverse_polynomial_sequence(std::vector<Label> rows, std::vector<Label> cols,
                                          std::vector<InversePolynomial> cells,
                                          std::uint64_t stabilization_index) {
  if (cells.size() != rows.size() * cols.size()) {
    throw ValidationError("sequence has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(rows.size() * cols.size()));
  }
  JointSequence seq;
  seq.rows = rows;
  seq.cols = cols;
  seq.stabilization_index = stabilization_index;
  seq.generator = [rows = std::move(rows), cols = std::move(cols),
                   cells = std::move(cells)](std::uint64_t n) {
    std::vector<Rational> values;
    values.reserve(cells.size());
    for (const auto& c : cells) values.push_back(c(n));
    return JointTable(rows, cols, std::move(values));
  };
  return seq;
}

JointTable inverse_polynomial_limit(const std::vector<Label>& rows, const std::vector<Label>& cols,
                                    const std::vector<InversePolynomial>& cells) {
  std::vector<Rational> values;
  values.reserve(cells.size());
  for (const auto& c : cells) values.push_back(c.limit());
  return JointTable(rows, cols, std::move(values));
}

namespace {

std::vector<std::uint64_t> probe_schedule(std::uint64_t n_probe, std::uint64_t stabilization) {
  if (n_probe < stabilization) {
    throw ValidationError("probe index " + std::to_string(n_probe) +
                          " is below the stabilization index " + std::to_string(stabilization));
  }
  return {n_probe, 2 * n_probe, 4 * n_probe};
}

void finish(ConvergenceReport& report, double tol) {
  report.tolerance = tol;
  report.within_tolerance = report.at_probe().max_deviation.to_double() <= tol;
  report.monotone = true;
  for (std::size_t k = 1; k < report.probes.size(); ++k) {
    if (report.probes[k].max_deviation > report.probes[k - 1].max_deviation) report.monotone = false;
  }
}

}  // namespace

ConvergenceReport check_weak_convergence(const PmfSequence& seq, const Pmf& limit, double tol,
                                         std::uint64_t n_probe) {
  require_pmf(limit);
  std::vector<Label> limit_labels;
  for (const auto& [label, mass] : limit) limit_labels.push_back(label);
  auto expected = seq.limit_alphabet;
  std::sort(expected.begin(), expected.end());
  if (limit_labels != expected) throw AlphabetMismatch("limit pmf is not on the limit alphabet");

  const Bits h_limit = entropy(limit);
  ConvergenceReport report;
  for (std::uint64_t n : probe_schedule(n_probe, seq.stabilization_index)) {
    const Pmf p_n = seq.generator(n);
    std::vector<Label> labels;
    for (const auto& [label, mass] : p_n) labels.push_back(label);
    if (labels != expected) {
      throw AlphabetMismatch("term " + std::to_string(n) + " is not on the limit alphabet");
    }
    require_pmf(p_n);
    ConvergenceProbe probe;
    probe.n = n;
    for (const auto& [label, mass] : p_n) {
      probe.max_deviation = std::max(probe.max_deviation, abs(mass - limit.at(label)));
    }
    probe.entropy_gap = std::abs(entropy(p_n) - h_limit);
    report.probes.push_back(std::move(probe));
  }
  finish(report, tol);
  return report;
}

ConvergenceReport check_weak_convergence(const JointSequence& seq, const JointTable& limit,
                                         double tol, std::uint64_t n_probe) {
  auto rows = seq.rows;
  auto cols = seq.cols;
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  if (limit.rows() != rows || limit.cols() != cols) {
    throw AlphabetMismatch("limit table is not on the sequence's alphabets");
  }
  const Bits h_limit = entropy(limit.cells());
  const Bits i_limit = mutual_information(limit);
  ConvergenceReport report;
  for (std::uint64_t n : probe_schedule(n_probe, seq.stabilization_index)) {
    const JointTable t_n = seq.generator(n);
    if (t_n.rows() != rows || t_n.cols() != cols) {
      throw AlphabetMismatch("term " + std::to_string(n) + " is not on the limit alphabets");
    }
    ConvergenceProbe probe;
    probe.n = n;
    for (std::size_t k = 0; k < t_n.cells().size(); ++k) {
      probe.max_deviation = std::max(probe.max_deviation, abs(t_n.cells()[k] - limit.cells()[k]));
    }
    probe.entropy_gap = std::abs(entropy(t_n.cells()) - h_limit);
    probe.information_gap = std::abs(mutual_information(t_n) - i_limit);
    report.probes.push_back(std::move(probe));
  }
  finish(report, tol);
  return report;
}

}  // namespace infoax
