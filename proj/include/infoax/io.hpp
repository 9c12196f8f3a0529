#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "infoax/constructions.hpp"
#include "infoax/corpus.hpp"
#include "infoax/markov.hpp"
#include "infoax/prob_core.hpp"

namespace infoax::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// A sample space with named variables on it. Documents written with the
/// joint-table shorthand remember the table so they serialize back the same
/// way.
///
/// Expanded form:
///   {"version": 1,
///    "space": {"outcomes": ["w0", ...], "weights": ["1/2", ...]},
///    "variables": {"X": {"w0": "a", ...}, ...}}
///
/// Joint shorthand (expands to Ω = rows×cols with coordinate variables):
///   {"version": 1,
///    "joint": {"names": ["X", "Y"], "rows": [...], "cols": [...],
///              "cells": [["1/4", "1/4"], ["1/4", "1/4"]]}}
struct InstanceDocument {
  SpacePtr space;
  std::map<std::string, FiniteRandomVariable> variables;
  std::optional<JointTable> joint;
  std::vector<std::string> joint_names;

  const FiniteRandomVariable& variable(const std::string& name) const;
};

/// Validates and expands a document. ValidationError messages name the
/// offending field, e.g. "space.weights[2]: malformed rational 'x'".
InstanceDocument parse_document(const json& doc);

/// Parses JSON text, reporting syntax errors with line and column.
json read_json(std::istream& in);
/// "-" reads stdin.
json read_json_file(const std::string& path);

json to_json(const InstanceDocument& doc);

InstanceDocument make_document(const std::map<std::string, FiniteRandomVariable>& variables);

json rational_json(const Rational& r);
Rational parse_rational(const json& j, const std::string& where);
json pmf_json(const Pmf& p);
Pmf parse_pmf(const json& j, const std::string& where);
json space_json(const SampleSpace& s);
json joint_json(const JointTable& t);
json mediator_json(const MediatorFunction& h);
json map_json(const MeasurePreservingMap& pi);

/// Sequence descriptor: each cell is a list of rational coefficients of
/// 1, 1/n, 1/n², ...
///   {"version": 1,
///    "sequence": {"rows": [...], "cols": [...], "stabilization_index": 1,
///                 "cells": [[["1/4", "1/4"], ...], ...]}}
SequenceInstance parse_sequence(const json& doc);
json to_json(const SequenceInstance& seq);

}  // namespace infoax::io
