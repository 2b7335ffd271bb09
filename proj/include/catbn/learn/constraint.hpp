#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catbn/dag.hpp"
#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/graph_queries.hpp"
#include "catbn/learn/ci_test.hpp"

namespace catbn::learn {

/// Undirected graph plus the separating set recorded for every removed edge.
class Skeleton {
 public:
  explicit Skeleton(std::vector<std::string> nodes) : nodes_(std::move(nodes)), adj_(nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_[nodes_[i]] = static_cast<int>(i);
  }

  static Skeleton complete(std::vector<std::string> nodes) {
    Skeleton s(std::move(nodes));
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) s.connect(static_cast<int>(i), static_cast<int>(j));
    return s;
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::string& name(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(ErrorKind::UnknownNode, "unknown node '" + name + "'");
    return it->second;
  }

  bool adjacent(int a, int b) const { return adj_[a].count(b) != 0; }
  bool adjacent(const std::string& a, const std::string& b) const { return adjacent(index_of(a), index_of(b)); }
  const std::set<int>& neighbors(int a) const { return adj_[a]; }

  void connect(int a, int b) {
    adj_[a].insert(b);
    adj_[b].insert(a);
    sepsets_.erase(key(a, b));
  }

  void separate(int a, int b, std::vector<int> sepset) {
    adj_[a].erase(b);
    adj_[b].erase(a);
    sepsets_[key(a, b)] = std::move(sepset);
  }

  /// Separating set of a non-adjacent pair; nullopt for adjacent pairs.
  std::optional<std::vector<int>> sepset(int a, int b) const {
    auto it = sepsets_.find(key(a, b));
    if (it == sepsets_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<NameSet> sepset(const std::string& a, const std::string& b) const {
    auto s = sepset(index_of(a), index_of(b));
    if (!s) return std::nullopt;
    NameSet out;
    for (int i : *s) out.insert(name(i));
    return out;
  }

  /// Undirected edges as (lower name, higher name), sorted.
  std::vector<std::pair<std::string, std::string>> edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (int b : adj_[a])
        if (nodes_[a] < nodes_[b]) out.emplace_back(nodes_[a], nodes_[b]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::pair<int, int> key(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

  std::vector<std::string> nodes_;
  std::map<std::string, int> index_;
  std::vector<std::set<int>> adj_;
  std::map<std::pair<int, int>, std::vector<int>> sepsets_;
};

namespace detail {

/// Every size-k subset of `pool` (already in the desired order), lexicographically.
template <class Fn>
bool for_each_subset(const std::vector<int>& pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::vector<int> subset;
    for (auto i : pick) subset.push_back(pool[i]);
    if (fn(subset)) return true;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

/// PC-style adjacency search. Starting from the complete graph, for
/// conditioning-set sizes 0..max_sepset each still-adjacent pair (x, y) is
/// tested against subsets of adj(x)\{y}, then adj(y)\{x}; the first subset
/// rendering them independent removes the edge and is stored as the sepset.
/// A negative max_sepset means no limit.
inline Skeleton learn_skeleton(const DataTable& data, double alpha, int max_sepset = -1) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must lie in (0, 1)");
  Skeleton skel = Skeleton::complete(data.names());
  const int n = static_cast<int>(skel.size());
  std::vector<int> by_name(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_name[i] = i;
  std::sort(by_name.begin(), by_name.end(), [&](int a, int b) { return skel.name(a) < skel.name(b); });
  auto sorted_pool = [&](int a, int exclude) {
    std::vector<int> pool;
    for (int v : by_name)
      if (v != exclude && skel.adjacent(a, v)) pool.push_back(v);
    return pool;
  };

  const int limit = max_sepset < 0 ? std::max(0, n - 2) : max_sepset;
  for (int level = 0; level <= limit; ++level) {
    bool tested = false;
    for (int ia = 0; ia < n; ++ia) {
      for (int ib = ia + 1; ib < n; ++ib) {
        const int x = by_name[ia];
        const int y = by_name[ib];
        if (!skel.adjacent(x, y)) continue;
        for (const auto& pool : {sorted_pool(x, y), sorted_pool(y, x)}) {
          const bool removed = detail::for_each_subset(pool, static_cast<std::size_t>(level), [&](const std::vector<int>& z) {
            tested = true;
            std::vector<std::size_t> zc(z.begin(), z.end());
            if (!ci_test(data, static_cast<std::size_t>(x), static_cast<std::size_t>(y), zc, alpha).independent)
              return false;
            skel.separate(x, y, z);
            return true;
          });
          if (removed) break;
        }
      }
    }
    if (!tested) break;
  }
  return skel;
}

struct OrientResult {
  Dag dag;
  /// Edges whose direction was forced both ways, as "a-b" (resolved toward
  /// the lexicographically smaller parent).
  std::vector<std::string> conflicts;
};

/// Orients a skeleton: v-structures first, then Meek rules 1 and 2 to a
/// fixed point, then every remaining undirected edge from the lower to the
/// higher name unless that would close a cycle.
inline OrientResult orient(const Skeleton& skel) {
  const int n = static_cast<int>(skel.size());
  // dir[a][b]: 0 undirected/absent, 1 a->b, -1 b->a
  std::vector<std::vector<int>> dir(n, std::vector<int>(n, 0));
  OrientResult out;
  auto name_less = [&](int a, int b) { return skel.name(a) < skel.name(b); };
  auto set_dir = [&](int from, int to) {
    dir[from][to] = 1;
    dir[to][from] = -1;
  };
  auto directed = [&](int a, int b) { return skel.adjacent(a, b) && dir[a][b] == 1; };
  auto undirected = [&](int a, int b) { return skel.adjacent(a, b) && dir[a][b] == 0; };

  std::vector<int> by_name(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_name[i] = i;
  std::sort(by_name.begin(), by_name.end(), name_less);

  for (int c : by_name) {
    std::vector<int> nb;
    for (int v : by_name)
      if (skel.adjacent(c, v)) nb.push_back(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const int a = nb[i], b = nb[j];
        if (skel.adjacent(a, b)) continue;
        const auto sep = skel.sepset(a, b);
        if (sep && std::find(sep->begin(), sep->end(), c) != sep->end()) continue;
        for (int p : {a, b}) {
          if (dir[c][p] == 1) {
            // c->p was already forced; keep the lexicographically smaller parent
            const int from = name_less(p, c) ? p : c;
            const int to = from == p ? c : p;
            out.conflicts.push_back(skel.name(std::min(p, c, name_less)) + "-" + skel.name(std::max(p, c, name_less)));
            set_dir(from, to);
          } else {
            set_dir(p, c);
          }
        }
      }
    }
  }

  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!directed(a, b)) continue;
        for (int c = 0; c < n; ++c) {
          // rule 1: a->b - c, a and c non-adjacent
          if (c != a && undirected(b, c) && !skel.adjacent(a, c)) {
            set_dir(b, c);
            changed = true;
          }
          // rule 2: a->b->c with a - c
          if (directed(b, c) && undirected(a, c)) {
            set_dir(a, c);
            changed = true;
          }
        }
      }
  }

  std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
  auto add = [&](int from, int to) {
    if (creates_cycle(parents, from, to)) {
      out.conflicts.push_back(skel.name(std::min(from, to, name_less)) + "-" +
                              skel.name(std::max(from, to, name_less)));
      std::swap(from, to);
    }
    parents[to].push_back(from);
  };
  for (int a : by_name)
    for (int b : by_name)
      if (directed(a, b)) add(a, b);
  for (int a : by_name)
    for (int b : by_name)
      if (name_less(a, b) && undirected(a, b)) {
        if (creates_cycle(parents, a, b))
          parents[a].push_back(b);
        else
          parents[b].push_back(a);
      }

  out.dag = dag_from_parents(skel.nodes(), parents);
  return out;
}

}  // namespace catbn::learn
