#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catbn/error.hpp"

namespace catbn {

/// A named categorical variable. The state index is the position of its label.
class Variable {
 public:
  Variable(std::string name, std::vector<std::string> states)
      : name_(std::move(name)), states_(std::move(states)) {
    if (name_.empty()) throw Error(ErrorKind::InvalidVariable, "variable name is empty");
    if (states_.size() < 2)
      throw Error(ErrorKind::InvalidVariable, "variable '" + name_ + "' needs at least 2 states");
    std::set<std::string> seen;
    for (const auto& s : states_) {
      if (!seen.insert(s).second)
        throw Error(ErrorKind::InvalidVariable,
                    "variable '" + name_ + "' repeats state label '" + s + "'");
    }
  }

  /// States labelled "0", "1", ..., "cardinality-1".
  static Variable indexed(std::string name, std::size_t cardinality) {
    std::vector<std::string> states;
    states.reserve(cardinality);
    for (std::size_t i = 0; i < cardinality; ++i) states.push_back(std::to_string(i));
    return Variable(std::move(name), std::move(states));
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t cardinality() const noexcept { return states_.size(); }

  /// Index of a state given either its label or a decimal index.
  int state_index(const std::string& label) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
      if (states_[i] == label) return static_cast<int>(i);
    try {
      std::size_t pos = 0;
      int idx = std::stoi(label, &pos);
      if (pos == label.size() && idx >= 0 && static_cast<std::size_t>(idx) < states_.size())
        return idx;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidAssignment,
                "'" + label + "' is not a state of variable '" + name_ + "'");
  }

  friend bool operator==(const Variable&, const Variable&) = default;

 private:
  std::string name_;
  std::vector<std::string> states_;
};

}  // namespace catbn
