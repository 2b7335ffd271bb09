#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catbn/error.hpp"
#include "catbn/variable.hpp"

namespace catbn {

inline constexpr double kRowSumTolerance = 1e-9;

/// Index of a parent configuration. Parents are taken in declared order with
/// the last parent's state varying fastest.
inline std::size_t configuration_index(std::span<const std::size_t> cardinalities,
                                       std::span<const int> states) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < cardinalities.size(); ++i)
    idx = idx * cardinalities[i] + static_cast<std::size_t>(states[i]);
  return idx;
}

/// Inverse of configuration_index.
inline std::vector<int> configuration_states(std::span<const std::size_t> cardinalities,
                                             std::size_t index) {
  std::vector<int> states(cardinalities.size(), 0);
  for (std::size_t i = cardinalities.size(); i-- > 0;) {
    states[i] = static_cast<int>(index % cardinalities[i]);
    index /= cardinalities[i];
  }
  return states;
}

/// Conditional probability table P(variable | parents), stored row-major:
/// one row per parent configuration, one column per state.
class Cpt {
 public:
  Cpt(Variable variable, std::vector<Variable> parents, std::vector<double> table)
      : variable_(std::move(variable)), parents_(std::move(parents)), table_(std::move(table)) {
    for (const auto& p : parents_) parent_cards_.push_back(p.cardinality());
    const std::size_t expected = configurations() * cardinality();
    if (table_.size() != expected)
      throw Error(ErrorKind::InvalidCpt, "CPT of '" + variable_.name() + "' has " +
                                             std::to_string(table_.size()) + " entries, expected " +
                                             std::to_string(expected));
    for (std::size_t c = 0; c < configurations(); ++c) {
      double sum = 0.0;
      for (double p : row(c)) {
        if (!(p >= 0.0 && p <= 1.0))
          throw Error(ErrorKind::InvalidCpt, "CPT of '" + variable_.name() + "' has entry outside [0,1]");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance)
        throw Error(ErrorKind::InvalidCpt, "CPT of '" + variable_.name() + "' row " + std::to_string(c) +
                                               " sums to " + std::to_string(sum));
    }
  }

  const Variable& variable() const noexcept { return variable_; }
  const std::vector<Variable>& parents() const noexcept { return parents_; }
  const std::vector<std::size_t>& parent_cardinalities() const noexcept { return parent_cards_; }
  const std::vector<double>& table() const noexcept { return table_; }

  std::size_t cardinality() const noexcept { return variable_.cardinality(); }

  std::size_t configurations() const noexcept {
    std::size_t q = 1;
    for (auto r : parent_cards_) q *= r;
    return q;
  }

  std::span<const double> row(std::size_t configuration) const {
    return std::span<const double>(table_).subspan(configuration * cardinality(), cardinality());
  }

  double probability(std::size_t configuration, int state) const {
    return table_[configuration * cardinality() + static_cast<std::size_t>(state)];
  }

  double probability(std::span<const int> parent_states, int state) const {
    return probability(configuration_index(parent_cards_, parent_states), state);
  }

 private:
  Variable variable_;
  std::vector<Variable> parents_;
  std::vector<std::size_t> parent_cards_;
  std::vector<double> table_;
};

}  // namespace catbn
