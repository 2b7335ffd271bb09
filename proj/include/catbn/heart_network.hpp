#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "catbn/dag.hpp"
#include "catbn/variable.hpp"

namespace catbn::heart {

inline constexpr const char* kClassVariable = "target";

/// Recoded Cleveland variables and their cardinalities, in CPT-table order.
inline const std::vector<std::pair<std::string, std::size_t>>& schema() {
  static const std::vector<std::pair<std::string, std::size_t>> s = {
      {"sex", 2},  {"cp", 4},     {"fbs", 2},    {"restecg", 3},   {"exang", 2},
      {"slope", 3}, {"ca", 4},    {"thal", 3},   {"target", 2},    {"ageC", 3},
      {"trestbpsC", 3}, {"cholC", 3}, {"thalachC", 2}, {"oldpeakC", 2},
  };
  return s;
}

inline std::vector<Variable> variables() {
  std::vector<Variable> vars;
  for (const auto& [name, card] : schema()) vars.push_back(Variable::indexed(name, card));
  return vars;
}

/// Edges recovered from the conditioning sets of the published CPTs.
/// Parent order within a family follows the published table headings.
inline const std::vector<Edge>& reference_edges() {
  static const std::vector<Edge> e = {
      {"target", "cp"},     {"cp", "exang"},     {"target", "slope"},    {"target", "ca"},
      {"sex", "thal"},      {"thal", "target"},  {"ca", "ageC"},         {"ageC", "trestbpsC"},
      {"slope", "thalachC"}, {"exang", "thalachC"}, {"slope", "oldpeakC"}, {"target", "oldpeakC"},
  };
  return e;
}

/// The fixed 14-node heart-disease structure (12 edges; fbs, restecg and
/// cholC isolated).
inline Dag reference_network() { return build_dag(variables(), reference_edges()); }

}  // namespace catbn::heart
