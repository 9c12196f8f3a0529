#include "infoax/markov.hpp"

#include <stdexcept>

#include "infoax/errors.hpp"

namespace infoax {

namespace {

const FiniteRandomVariable& checked(const FiniteRandomVariable& v, const FiniteRandomVariable& ref) {
  if (!same_space(v.space(), ref.space())) {
    throw DomainMismatch("triple members live on different sample spaces");
  }
  return v;
}

}  // namespace

Triple::Triple(FiniteRandomVariable x, FiniteRandomVariable y, FiniteRandomVariable z)
    : x_(std::move(x)),
      y_(checked(y, x_)),
      z_(checked(z, x_)),
      q_(conditional_kernel(x_, y_)),
      p_(conditional_kernel(y_, z_)),
      r_(conditional_kernel(x_, z_)) {}

const Label& MediatorFunction::operator()(const Label& z, const Label& x) const {
  auto it = table_.find({z, x});
  if (it == table_.end()) throw AlphabetMismatch("mediator undefined at (" + z + "," + x + ")");
  return it->second;
}

bool verify_mediator(const Triple& t, const MediatorFunction& h) {
  const auto& xs = t.x().alphabet();
  const auto& zs = t.z().alphabet();
  if (h.table().size() != xs.size() * zs.size()) {
    throw AlphabetMismatch("mediator is not defined on exactly Z×X");
  }
  bool ok = true;
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      const Label& y = h(zs[zi], xs[xi]);
      const auto yi = t.y().label_index(y);
      if (!yi) throw AlphabetMismatch("mediator value '" + y + "' is not a label of Y");
      if (t.r().at(xi, zi) != t.p().at(*yi, zi) * t.q().at(xi, *yi)) ok = false;
    }
  }
  return ok;
}

std::vector<std::vector<std::size_t>> candidate_sets(const Triple& t) {
  const std::size_t nx = t.x().alphabet_size();
  const std::size_t ny = t.y().alphabet_size();
  const std::size_t nz = t.z().alphabet_size();
  std::vector<std::vector<std::size_t>> sets(nz * nx);
  for (std::size_t zi = 0; zi < nz; ++zi) {
    for (std::size_t xi = 0; xi < nx; ++xi) {
      const Rational& target = t.r().at(xi, zi);
      for (std::size_t yi = 0; yi < ny; ++yi) {
        if (t.p().at(yi, zi) * t.q().at(xi, yi) == target) sets[zi * nx + xi].push_back(yi);
      }
    }
  }
  return sets;
}

std::optional<MediatorFunction> find_mediator(const Triple& t) {
  const auto& xs = t.x().alphabet();
  const auto& ys = t.y().alphabet();
  const auto& zs = t.z().alphabet();
  const auto sets = candidate_sets(t);
  std::map<std::pair<Label, Label>, Label> table;
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      const auto& c = sets[zi * xs.size() + xi];
      if (c.empty()) return std::nullopt;
      table.emplace(std::make_pair(zs[zi], xs[xi]), ys[c.front()]);
    }
  }
  return MediatorFunction(std::move(table));
}

double weak_functoriality_residual(const Triple& t, double base) {
  return mutual_information(t.x(), t.z(), base) - mutual_information(t.x(), t.y(), base) -
         mutual_information(t.y(), t.z(), base) + mutual_information(t.y(), t.y(), base);
}

double chain_rule_residual(const Triple& t, double base) {
  return conditional_entropy(t.x(), t.z(), base) - conditional_entropy(t.y(), t.z(), base) -
         conditional_entropy(t.x(), t.y(), base);
}

std::string_view family_name(TriangleFamily family) {
  switch (family) {
    case TriangleFamily::canonical_product: return "canonical_product";
    case TriangleFamily::relabeled_input: return "relabeled_input";
    case TriangleFamily::relabeled_output: return "relabeled_output";
    case TriangleFamily::deterministic_chain: return "deterministic_chain";
  }
  return "unknown";
}

std::optional<TriangleFamily> parse_family(std::string_view name) {
  for (auto f : {TriangleFamily::canonical_product, TriangleFamily::relabeled_input,
                 TriangleFamily::relabeled_output, TriangleFamily::deterministic_chain}) {
    if (family_name(f) == name) return f;
  }
  if (name == "a") return TriangleFamily::canonical_product;
  if (name == "b") return TriangleFamily::relabeled_input;
  if (name == "c") return TriangleFamily::relabeled_output;
  if (name == "d") return TriangleFamily::deterministic_chain;
  return std::nullopt;
}

GeneratedTriangle generate_markov_triangle(InstanceGenerator& gen, TriangleFamily family) {
  auto s = gen.space();
  auto x = gen.variable(s, "x");
  auto y = gen.variable(s, "y");
  std::optional<Triple> t;
  switch (family) {
    case TriangleFamily::canonical_product:
      t.emplace(x, canonical_product(x, y), y);
      break;
    case TriangleFamily::relabeled_input:
      t.emplace(x, relabel(x, gen.bijection(x.alphabet(), "u")), y);
      break;
    case TriangleFamily::relabeled_output:
      t.emplace(x, y, relabel(y, gen.bijection(y.alphabet(), "v")));
      break;
    case TriangleFamily::deterministic_chain: {
      auto mid = map_labels(x, gen.function(x.alphabet(), "y"));
      auto end = map_labels(mid, gen.function(mid.alphabet(), "z"));
      t.emplace(x, std::move(mid), std::move(end));
      break;
    }
  }
  if (!find_mediator(*t)) {
    throw std::logic_error("generated triple from family " + std::string(family_name(family)) +
                           " has no mediator");
  }
  return {family, std::move(*t)};
}

GeneratedTriangle generate_markov_triangle(std::uint64_t seed, const CorpusBounds& bounds,
                                           TriangleFamily family) {
  InstanceGenerator gen(seed, bounds);
  return generate_markov_triangle(gen, family);
}

GeneratedTriangle generate_markov_triangle(std::uint64_t seed, const CorpusBounds& bounds) {
  InstanceGenerator gen(seed, bounds);
  const auto family = static_cast<TriangleFamily>(gen.uniform(0, 3));
  return generate_markov_triangle(gen, family);
}

std::optional<Triple> generate_triangle_by_rejection(std::uint64_t seed, const CorpusBounds& bounds,
                                                     std::size_t max_attempts) {
  InstanceGenerator gen(seed, bounds);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    auto s = gen.space();
    Triple t(gen.variable(s, "x"), gen.variable(s, "y"), gen.variable(s, "z"));
    if (is_markov_triangle(t)) return t;
  }
  return std::nullopt;
}

}  // namespace infoax
