#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catbn/error.hpp"
#include "catbn/variable.hpp"

namespace catbn {

using Edge = std::pair<std::string, std::string>;  // (parent, child)

/// Validated directed acyclic graph over named nodes.
///
/// Parent lists keep the order in which edges were declared; that order is
/// the parent order of the node's CPT.
class Dag {
 public:
  Dag() = default;

  Dag(std::vector<std::string> nodes, std::span<const Edge> edges) : nodes_(std::move(nodes)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!index_.emplace(nodes_[i], static_cast<int>(i)).second)
        throw Error(ErrorKind::DuplicateName, "node '" + nodes_[i] + "' declared twice");
    }
    parents_.resize(nodes_.size());
    children_.resize(nodes_.size());
    std::set<std::pair<int, int>> seen;
    for (const auto& [from, to] : edges) {
      const int p = index_of(from);
      const int c = index_of(to);
      if (p == c) throw Error(ErrorKind::SelfLoop, "self-loop on '" + from + "'");
      if (!seen.emplace(p, c).second)
        throw Error(ErrorKind::DuplicateEdge, "edge " + from + " -> " + to + " declared twice");
      parents_[c].push_back(p);
      children_[p].push_back(c);
      edges_.emplace_back(from, to);
    }
    order_ = compute_order();
    if (order_.size() != nodes_.size())
      throw Error(ErrorKind::CycleDetected, "edge set admits no topological order");
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::string& name(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::UnknownNode, "unknown node '" + name + "'");
    return it->second;
  }

  const std::vector<int>& parents(int i) const { return parents_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& children(int i) const { return children_.at(static_cast<std::size_t>(i)); }

  std::vector<std::string> parents(const std::string& node) const { return names(parents(index_of(node))); }
  std::vector<std::string> children(const std::string& node) const { return names(children(index_of(node))); }

  bool has_edge(const std::string& from, const std::string& to) const {
    const auto& ps = parents(index_of(to));
    return std::find(ps.begin(), ps.end(), index_of(from)) != ps.end();
  }

  /// Parents precede children; ties broken by lexicographic node name.
  const std::vector<int>& topological_indices() const noexcept { return order_; }

  std::vector<std::string> topological_order() const { return names(order_); }

  /// Strict descendants of node i.
  std::vector<bool> descendants(int i) const {
    std::vector<bool> seen(size(), false);
    std::vector<int> stack(children(i).begin(), children(i).end());
    while (!stack.empty()) {
      int n = stack.back();
      stack.pop_back();
      if (seen[n]) continue;
      seen[n] = true;
      for (int c : children(n)) stack.push_back(c);
    }
    return seen;
  }

  std::vector<std::string> names(const std::vector<int>& idx) const {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(nodes_[i]);
    return out;
  }

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.nodes_ == b.nodes_ && a.parents_ == b.parents_;
  }

 private:
  std::vector<int> compute_order() const {
    std::vector<int> indegree(size(), 0);
    for (std::size_t i = 0; i < size(); ++i) indegree[i] = static_cast<int>(parents_[i].size());
    auto later = [this](int a, int b) { return nodes_[a] > nodes_[b]; };
    std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
    for (std::size_t i = 0; i < size(); ++i)
      if (indegree[i] == 0) ready.push(static_cast<int>(i));
    std::vector<int> order;
    while (!ready.empty()) {
      int n = ready.top();
      ready.pop();
      order.push_back(n);
      for (int c : children_[n])
        if (--indegree[c] == 0) ready.push(c);
    }
    return order;
  }

  std::vector<std::string> nodes_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::vector<Edge> edges_;
  std::vector<int> order_;
};

inline Dag build_dag(std::span<const Variable> nodes, std::span<const Edge> edges) {
  std::vector<std::string> names;
  names.reserve(nodes.size());
  for (const auto& v : nodes) names.push_back(v.name());
  return Dag(std::move(names), edges);
}

inline Dag build_dag(std::vector<std::string> nodes, const std::vector<Edge>& edges) {
  return Dag(std::move(nodes), edges);
}

/// True if adding from -> to to a graph given by parent lists would close a cycle,
/// i.e. `from` is already reachable from `to`.
inline bool creates_cycle(const std::vector<std::vector<int>>& parents, int from, int to) {
  if (from == to) return true;
  // walk ancestors of `from`; a cycle appears iff `to` is among them
  std::vector<bool> seen(parents.size(), false);
  std::vector<int> stack{from};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    if (n == to) return true;
    if (seen[n]) continue;
    seen[n] = true;
    for (int p : parents[n]) stack.push_back(p);
  }
  return false;
}

/// Builds a Dag from integer parent lists over the given node names.
inline Dag dag_from_parents(const std::vector<std::string>& nodes,
                            const std::vector<std::vector<int>>& parents) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < parents.size(); ++c)
    for (int p : parents[c]) edges.emplace_back(nodes[p], nodes[c]);
  return Dag(nodes, edges);
}

}  // namespace catbn
