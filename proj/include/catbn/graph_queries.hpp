#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catbn/dag.hpp"
#include "catbn/error.hpp"

namespace catbn {

using NameSet = std::set<std::string>;

namespace detail {

inline std::vector<bool> membership(const Dag& dag, const NameSet& names) {
  std::vector<bool> in(dag.size(), false);
  for (const auto& n : names) in[dag.index_of(n)] = true;
  return in;
}

}  // namespace detail

/// d-separation of node sets x and y given z, via the reachable-trail
/// (Bayes-ball) formulation: a trail can pass a collider only if the collider
/// is an ancestor of z (or in z), and can pass any other node only if it is
/// not in z.
inline bool d_separated(const Dag& dag, const NameSet& x, const NameSet& y, const NameSet& z) {
  const auto in_x = detail::membership(dag, x);
  const auto in_y = detail::membership(dag, y);
  const auto in_z = detail::membership(dag, z);
  for (std::size_t i = 0; i < dag.size(); ++i)
    if ((in_x[i] && in_y[i]) || (in_x[i] && in_z[i]) || (in_y[i] && in_z[i]))
      throw Error(ErrorKind::InvalidArgument, "x, y and z must be disjoint ('" +
                                                  dag.name(static_cast<int>(i)) + "' is shared)");

  // z together with its ancestors
  std::vector<bool> opens_collider(dag.size(), false);
  std::vector<int> stack;
  for (std::size_t i = 0; i < dag.size(); ++i)
    if (in_z[i]) stack.push_back(static_cast<int>(i));
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    if (opens_collider[n]) continue;
    opens_collider[n] = true;
    for (int p : dag.parents(n)) stack.push_back(p);
  }

  // visit states: (node, arrived_from_child)
  enum Dir { kUp = 0, kDown = 1 };
  std::vector<std::array<bool, 2>> visited(dag.size(), {false, false});
  std::vector<std::pair<int, Dir>> frontier;
  for (std::size_t i = 0; i < dag.size(); ++i)
    if (in_x[i]) frontier.emplace_back(static_cast<int>(i), kUp);

  while (!frontier.empty()) {
    auto [n, dir] = frontier.back();
    frontier.pop_back();
    if (visited[n][dir]) continue;
    visited[n][dir] = true;
    if (!in_z[n] && in_y[n]) return false;
    if (dir == kUp && !in_z[n]) {
      for (int p : dag.parents(n)) frontier.emplace_back(p, kUp);
      for (int c : dag.children(n)) frontier.emplace_back(c, kDown);
    } else if (dir == kDown) {
      if (!in_z[n])
        for (int c : dag.children(n)) frontier.emplace_back(c, kDown);
      if (opens_collider[n])
        for (int p : dag.parents(n)) frontier.emplace_back(p, kUp);
    }
  }
  return true;
}

/// Parents, children and the children's other parents of `node`.
inline NameSet markov_blanket(const Dag& dag, const std::string& node) {
  const int i = dag.index_of(node);
  NameSet blanket;
  for (int p : dag.parents(i)) blanket.insert(dag.name(p));
  for (int c : dag.children(i)) {
    blanket.insert(dag.name(c));
    for (int p : dag.parents(c))
      if (p != i) blanket.insert(dag.name(p));
  }
  return blanket;
}

}  // namespace catbn
