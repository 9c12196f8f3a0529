#include "infoax/io.hpp"

#include <fstream>
#include <iostream>
#include <set>

#include "infoax/errors.hpp"

namespace infoax::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing");
  return *it;
}

std::string string_at(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Label label_at(const json& j, const std::string& where) {
  auto s = string_at(j, where);
  if (!is_well_formed_label(s)) fail(where, "malformed label '" + s + "'");
  return s;
}

std::vector<Label> labels_at(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  std::vector<Label> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(label_at(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Label> default_labels(std::size_t n) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

void check_version(const json& doc) {
  const auto& v = field(doc, "version", "document");
  if (!v.is_number_integer()) fail("version", "expected an integer");
  if (v.get<int>() != kSchemaVersion) {
    fail("version", "unsupported schema version " + std::to_string(v.get<int>()));
  }
}

// Re-raises a library validation error with the field path in front.
template <typename Fn>
auto at_path(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    fail(where, e.what());
  } catch (const NotAPmf& e) {
    fail(where, e.what());
  }
}

InstanceDocument parse_joint(const json& joint) {
  if (!joint.is_object()) fail("joint", "expected an object");
  const auto& cells = field(joint, "cells", "joint");
  if (!cells.is_array() || cells.empty()) fail("joint.cells", "expected a non-empty array of rows");
  const std::size_t nrows = cells.size();
  if (!cells[0].is_array() || cells[0].empty()) fail("joint.cells[0]", "expected a non-empty array");
  const std::size_t ncols = cells[0].size();

  std::vector<Rational> values;
  for (std::size_t r = 0; r < nrows; ++r) {
    const std::string row_path = "joint.cells[" + std::to_string(r) + "]";
    if (!cells[r].is_array() || cells[r].size() != ncols) {
      fail(row_path, "expected " + std::to_string(ncols) + " cells");
    }
    for (std::size_t c = 0; c < ncols; ++c) {
      values.push_back(parse_rational(cells[r][c], row_path + "[" + std::to_string(c) + "]"));
    }
  }
  auto rows = joint.contains("rows") ? labels_at(joint["rows"], "joint.rows") : default_labels(nrows);
  auto cols = joint.contains("cols") ? labels_at(joint["cols"], "joint.cols") : default_labels(ncols);
  if (rows.size() != nrows) fail("joint.rows", "expected " + std::to_string(nrows) + " labels");
  if (cols.size() != ncols) fail("joint.cols", "expected " + std::to_string(ncols) + " labels");
  std::vector<std::string> names{"X", "Y"};
  if (joint.contains("names")) {
    const auto& n = joint["names"];
    if (!n.is_array() || n.size() != 2) fail("joint.names", "expected two variable names");
    names = {string_at(n[0], "joint.names[0]"), string_at(n[1], "joint.names[1]")};
    if (names[0] == names[1]) fail("joint.names", "variable names must differ");
  }

  InstanceDocument doc;
  doc.joint.emplace(at_path("joint", [&] { return JointTable(rows, cols, values); }));
  auto [x, y] = coordinate_variables(*doc.joint);
  doc.space = x.space();
  doc.variables.emplace(names[0], std::move(x));
  doc.variables.emplace(names[1], std::move(y));
  doc.joint_names = names;
  return doc;
}

InstanceDocument parse_expanded(const json& doc) {
  const auto& space = field(doc, "space", "document");
  const auto& outcomes_json = field(space, "outcomes", "space");
  const auto& weights_json = field(space, "weights", "space");
  auto outcomes = labels_at(outcomes_json, "space.outcomes");
  if (!weights_json.is_array()) fail("space.weights", "expected an array of rationals");
  std::vector<Rational> weights;
  for (std::size_t i = 0; i < weights_json.size(); ++i) {
    weights.push_back(parse_rational(weights_json[i], "space.weights[" + std::to_string(i) + "]"));
  }

  InstanceDocument out;
  out.space = at_path("space", [&] { return make_space(outcomes, weights); });
  const auto& vars = field(doc, "variables", "document");
  if (!vars.is_object()) fail("variables", "expected an object");
  for (const auto& [name, assignment] : vars.items()) {
    const std::string where = "variables." + name;
    if (!assignment.is_object()) fail(where, "expected an object mapping outcomes to labels");
    std::map<std::string, Label> m;
    for (const auto& [outcome, label] : assignment.items()) {
      m.emplace(outcome, label_at(label, where + "." + outcome));
    }
    out.variables.emplace(name, at_path(where, [&] { return FiniteRandomVariable(out.space, m); }));
  }
  return out;
}

}  // namespace

const FiniteRandomVariable& InstanceDocument::variable(const std::string& name) const {
  auto it = variables.find(name);
  if (it == variables.end()) throw ValidationError("no variable named '" + name + "'");
  return it->second;
}

json rational_json(const Rational& r) { return r.str(); }

Rational parse_rational(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a rational string \"num/den\"");
  return at_path(where, [&] { return Rational::parse(j.get<std::string>()); });
}

json pmf_json(const Pmf& p) {
  json out = json::object();
  for (const auto& [label, mass] : p) out[label] = mass.str();
  return out;
}

Pmf parse_pmf(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object mapping labels to rationals");
  Pmf out;
  for (const auto& [label, mass] : j.items()) {
    if (!is_well_formed_label(label)) fail(where, "malformed label '" + label + "'");
    out.emplace(label, parse_rational(mass, where + "." + label));
  }
  return out;
}

json space_json(const SampleSpace& s) {
  json weights = json::array();
  for (const auto& w : s.weights()) weights.push_back(w.str());
  return {{"outcomes", s.outcomes()}, {"weights", std::move(weights)}};
}

json joint_json(const JointTable& t) {
  json cells = json::array();
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < t.cols().size(); ++c) row.push_back(t.at(r, c).str());
    cells.push_back(std::move(row));
  }
  return {{"rows", t.rows()}, {"cols", t.cols()}, {"cells", std::move(cells)}};
}

json mediator_json(const MediatorFunction& h) {
  json out = json::object();
  for (const auto& [key, y] : h.table()) out[key.first][key.second] = y;
  return out;
}

json map_json(const MeasurePreservingMap& pi) {
  json mapping = json::object();
  for (std::size_t i = 0; i < pi.source()->size(); ++i) {
    mapping[pi.source()->outcome(i)] = pi.target()->outcome(pi(i));
  }
  return {{"source", space_json(*pi.source())},
          {"target", space_json(*pi.target())},
          {"mapping", std::move(mapping)}};
}

InstanceDocument parse_document(const json& doc) {
  if (!doc.is_object()) fail("document", "expected a JSON object");
  check_version(doc);
  if (doc.contains("joint")) {
    if (doc.contains("space") || doc.contains("variables")) {
      fail("joint", "joint shorthand cannot be combined with space/variables");
    }
    return parse_joint(doc["joint"]);
  }
  return parse_expanded(doc);
}

json read_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  if (path == "-") return read_json(std::cin);
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_json(in);
}

json to_json(const InstanceDocument& doc) {
  if (doc.joint) {
    json j = joint_json(*doc.joint);
    j["names"] = doc.joint_names;
    return {{"version", kSchemaVersion}, {"joint", std::move(j)}};
  }
  json vars = json::object();
  for (const auto& [name, v] : doc.variables) {
    json assignment = json::object();
    for (std::size_t i = 0; i < v.space()->size(); ++i) assignment[v.space()->outcome(i)] = v.label_at(i);
    vars[name] = std::move(assignment);
  }
  return {{"version", kSchemaVersion}, {"space", space_json(*doc.space)}, {"variables", std::move(vars)}};
}

InstanceDocument make_document(const std::map<std::string, FiniteRandomVariable>& variables) {
  if (variables.empty()) throw ValidationError("document needs at least one variable");
  InstanceDocument doc;
  doc.space = variables.begin()->second.space();
  for (const auto& [name, v] : variables) {
    if (!same_space(doc.space, v.space())) throw DomainMismatch("document variables on different spaces");
    doc.variables.emplace(name, v);
  }
  return doc;
}

SequenceInstance parse_sequence(const json& doc) {
  if (!doc.is_object()) fail("document", "expected a JSON object");
  check_version(doc);
  const auto& seq = field(doc, "sequence", "document");
  const auto& cells = field(seq, "cells", "sequence");
  if (!cells.is_array() || cells.empty()) fail("sequence.cells", "expected a non-empty array of rows");
  SequenceInstance out;
  std::size_t ncols = 0;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const std::string row_path = "sequence.cells[" + std::to_string(r) + "]";
    if (!cells[r].is_array() || cells[r].empty()) fail(row_path, "expected a non-empty array");
    if (r == 0) ncols = cells[r].size();
    if (cells[r].size() != ncols) fail(row_path, "expected " + std::to_string(ncols) + " cells");
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::string cell_path = row_path + "[" + std::to_string(c) + "]";
      const auto& coeffs = cells[r][c];
      if (!coeffs.is_array() || coeffs.empty()) fail(cell_path, "expected coefficients of 1, 1/n, ...");
      std::vector<Rational> values;
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        values.push_back(parse_rational(coeffs[k], cell_path + "[" + std::to_string(k) + "]"));
      }
      out.cells.emplace_back(std::move(values));
    }
  }
  out.rows = seq.contains("rows") ? labels_at(seq["rows"], "sequence.rows") : default_labels(cells.size());
  out.cols = seq.contains("cols") ? labels_at(seq["cols"], "sequence.cols") : default_labels(ncols);
  if (out.rows.size() != cells.size()) fail("sequence.rows", "label count does not match cells");
  if (out.cols.size() != ncols) fail("sequence.cols", "label count does not match cells");
  if (seq.contains("stabilization_index")) {
    const auto& n = seq["stabilization_index"];
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0) {
      fail("sequence.stabilization_index", "expected a positive integer");
    }
    out.stabilization_index = n.get<std::uint64_t>();
  }
  // The limit must itself be a joint distribution.
  at_path("sequence.cells", [&] { return out.limit(); });
  return out;
}

json to_json(const SequenceInstance& seq) {
  json cells = json::array();
  for (std::size_t r = 0; r < seq.rows.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < seq.cols.size(); ++c) {
      json coeffs = json::array();
      for (const auto& k : seq.cells[r * seq.cols.size() + c].coefficients()) coeffs.push_back(k.str());
      row.push_back(std::move(coeffs));
    }
    cells.push_back(std::move(row));
  }
  return {{"version", kSchemaVersion},
          {"sequence",
           {{"rows", seq.rows},
            {"cols", seq.cols},
            {"cells", std::move(cells)},
            {"stabilization_index", seq.stabilization_index}}}};
}

}  // namespace infoax::io
