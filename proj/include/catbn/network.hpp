#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catbn/cpt.hpp"
#include "catbn/dag.hpp"
#include "catbn/error.hpp"
#include "catbn/variable.hpp"

namespace catbn {

/// Variable name -> state index. Partial for evidence, complete for joints.
using Assignment = std::map<std::string, int>;

/// A Dag with one Cpt per node.
class DiscreteBayesNet {
 public:
  DiscreteBayesNet(Dag dag, std::vector<Cpt> cpts) : dag_(std::move(dag)) {
    if (cpts.size() != dag_.size())
      throw Error(ErrorKind::InvalidCpt, "expected " + std::to_string(dag_.size()) + " CPTs, got " +
                                             std::to_string(cpts.size()));
    std::vector<std::optional<Cpt>> slots(dag_.size());
    for (auto& cpt : cpts) {
      const int i = dag_.index_of(cpt.variable().name());
      if (slots[i]) throw Error(ErrorKind::InvalidCpt, "two CPTs for '" + cpt.variable().name() + "'");
      slots[i] = std::move(cpt);
    }
    for (std::size_t i = 0; i < dag_.size(); ++i) {
      const auto& cpt = *slots[i];
      const auto& expected = dag_.parents(static_cast<int>(i));
      if (cpt.parents().size() != expected.size())
        throw Error(ErrorKind::InvalidCpt, "CPT parents of '" + dag_.name(static_cast<int>(i)) +
                                               "' do not match the graph");
      for (std::size_t k = 0; k < expected.size(); ++k)
        if (cpt.parents()[k].name() != dag_.name(expected[k]))
          throw Error(ErrorKind::InvalidCpt, "CPT parents of '" + dag_.name(static_cast<int>(i)) +
                                                 "' do not match the graph order");
      cpts_.push_back(cpt);
    }
    for (std::size_t i = 0; i < dag_.size(); ++i)
      for (const auto& p : cpts_[i].parents())
        if (!(p == cpts_[dag_.index_of(p.name())].variable()))
          throw Error(ErrorKind::InvalidCpt, "parent '" + p.name() + "' of '" + dag_.name(static_cast<int>(i)) +
                                                 "' disagrees with its own definition");
  }

  const Dag& dag() const noexcept { return dag_; }
  std::size_t size() const noexcept { return dag_.size(); }
  const std::vector<Cpt>& cpts() const noexcept { return cpts_; }
  const Cpt& cpt(int i) const { return cpts_.at(static_cast<std::size_t>(i)); }
  const Cpt& cpt(const std::string& name) const { return cpt(dag_.index_of(name)); }
  const Variable& variable(int i) const { return cpt(i).variable(); }
  const Variable& variable(const std::string& name) const { return cpt(name).variable(); }

  std::vector<Variable> variables() const {
    std::vector<Variable> out;
    for (const auto& c : cpts_) out.push_back(c.variable());
    return out;
  }

  /// Checks names and state ranges; returns a dense vector (-1 = unobserved).
  std::vector<int> dense(const Assignment& a) const {
    std::vector<int> states(size(), -1);
    for (const auto& [name, state] : a) {
      if (!dag_.contains(name))
        throw Error(ErrorKind::InvalidAssignment, "unknown variable '" + name + "'");
      const int i = dag_.index_of(name);
      if (state < 0 || static_cast<std::size_t>(state) >= variable(i).cardinality())
        throw Error(ErrorKind::InvalidAssignment,
                    "state " + std::to_string(state) + " out of range for '" + name + "'");
      states[i] = state;
    }
    return states;
  }

  /// P(x_i | pa(x_i)) for a dense complete assignment.
  double local_probability(int i, const std::vector<int>& states) const {
    const auto& ps = dag_.parents(i);
    std::size_t config = 0;
    for (int p : ps) config = config * variable(p).cardinality() + static_cast<std::size_t>(states[p]);
    return cpts_[i].probability(config, states[i]);
  }

  double joint_dense(const std::vector<int>& states) const {
    double p = 1.0;
    for (std::size_t i = 0; i < size() && p != 0.0; ++i) p *= local_probability(static_cast<int>(i), states);
    return p;
  }

 private:
  Dag dag_;
  std::vector<Cpt> cpts_;
};

/// Chain-rule joint probability of a complete assignment.
inline double joint_probability(const DiscreteBayesNet& net, const Assignment& a) {
  const auto states = net.dense(a);
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] < 0)
      throw Error(ErrorKind::IncompleteAssignment,
                  "no state for '" + net.dag().name(static_cast<int>(i)) + "'");
  return net.joint_dense(states);
}

/// Steps a dense assignment through every joint configuration of the
/// positions in `free` (last position fastest). Returns false after the last one.
inline bool next_configuration(std::vector<int>& states, const std::vector<int>& free,
                               const std::vector<std::size_t>& cards) {
  for (std::size_t k = free.size(); k-- > 0;) {
    const int i = free[k];
    if (static_cast<std::size_t>(++states[i]) < cards[i]) return true;
    states[i] = 0;
  }
  return false;
}

}  // namespace catbn
