#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "catbn/dag.hpp"
#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/learn/score.hpp"

namespace catbn::learn {

/// Symmetric matrix over data columns; true where an edge (in either
/// direction) may be proposed.
using CandidateMask = std::vector<std::vector<bool>>;

struct HillClimbOptions {
  ScoreKind score = ScoreKind::bic();
  int max_iter = 1000;
  int restarts = 0;         // random-perturbation restarts after the first climb
  std::uint64_t seed = 0;   // drives the restart perturbations only
  std::optional<CandidateMask> candidates;
};

struct SearchResult {
  Dag dag;
  double score = 0.0;
  /// Score of the start graph followed by the score after every accepted move
  /// of the climb that produced `dag`.
  std::vector<double> trace;
};

namespace detail {

/// Memoized family scores keyed by (node, sorted parent set).
class FamilyCache {
 public:
  FamilyCache(const DataTable& data, const ScoreKind& kind) : data_(data), kind_(kind) {}

  double operator()(std::size_t node, std::vector<int> parents) {
    std::sort(parents.begin(), parents.end());
    auto key = std::make_pair(node, parents);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<std::size_t> ps(parents.begin(), parents.end());
    const double s = family_score(data_, node, ps, kind_);
    cache_.emplace(std::move(key), s);
    return s;
  }

 private:
  const DataTable& data_;
  ScoreKind kind_;
  std::map<std::pair<std::size_t, std::vector<int>>, double> cache_;
};

inline std::vector<int> with(std::vector<int> v, int x) {
  v.push_back(x);
  return v;
}

inline std::vector<int> without(std::vector<int> v, int x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
  return v;
}

inline bool has_parent(const std::vector<std::vector<int>>& parents, int child, int parent) {
  const auto& ps = parents[child];
  return std::find(ps.begin(), ps.end(), parent) != ps.end();
}

// Accepted moves must beat the current score by more than rounding noise so
// score-equivalent reversals cannot cycle.
inline constexpr double kMinImprovement = 1e-10;

struct Climb {
  std::vector<std::vector<int>> parents;
  std::vector<double> trace;
};

inline Climb climb(std::vector<std::vector<int>> parents, FamilyCache& family, const CandidateMask* mask,
                   int max_iter) {
  const int n = static_cast<int>(parents.size());
  std::vector<double> fam(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += fam[i] = family(static_cast<std::size_t>(i), parents[i]);
  Climb out{{}, {total}};

  enum class Move { Add, Delete, Reverse };
  for (int iter = 0; iter < max_iter; ++iter) {
    double best_delta = kMinImprovement;
    std::optional<std::tuple<Move, int, int>> best;
    for (int from = 0; from < n; ++from) {
      for (int to = 0; to < n; ++to) {
        if (from == to) continue;
        if (has_parent(parents, to, from)) {
          const double del = family(static_cast<std::size_t>(to), without(parents[to], from)) - fam[to];
          if (del > best_delta) {
            best_delta = del;
            best = {Move::Delete, from, to};
          }
          auto reduced = parents;
          reduced[to] = without(reduced[to], from);
          if (!creates_cycle(reduced, to, from)) {
            const double rev = del + family(static_cast<std::size_t>(from), with(parents[from], to)) - fam[from];
            if (rev > best_delta) {
              best_delta = rev;
              best = {Move::Reverse, from, to};
            }
          }
        } else if (!has_parent(parents, from, to)) {
          if (mask && !(*mask)[from][to]) continue;
          if (creates_cycle(parents, from, to)) continue;
          const double add = family(static_cast<std::size_t>(to), with(parents[to], from)) - fam[to];
          if (add > best_delta) {
            best_delta = add;
            best = {Move::Add, from, to};
          }
        }
      }
    }
    if (!best) break;
    const auto [move, from, to] = *best;
    switch (move) {
      case Move::Add:
        parents[to].push_back(from);
        break;
      case Move::Delete:
        parents[to] = without(parents[to], from);
        break;
      case Move::Reverse:
        parents[to] = without(parents[to], from);
        parents[from].push_back(to);
        break;
    }
    fam[to] = family(static_cast<std::size_t>(to), parents[to]);
    fam[from] = family(static_cast<std::size_t>(from), parents[from]);
    total = 0.0;
    for (double f : fam) total += f;
    out.trace.push_back(total);
  }
  out.parents = std::move(parents);
  return out;
}

/// Applies `count` random legal single-edge changes.
inline void perturb(std::vector<std::vector<int>>& parents, const CandidateMask* mask, int count,
                    std::mt19937_64& rng) {
  const int n = static_cast<int>(parents.size());
  for (int k = 0; k < count; ++k) {
    const int from = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const int to = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (from == to) continue;
    if (has_parent(parents, to, from)) {
      parents[to] = without(parents[to], from);
    } else if (!has_parent(parents, from, to) && (!mask || (*mask)[from][to]) &&
               !creates_cycle(parents, from, to)) {
      parents[to].push_back(from);
    }
  }
}

}  // namespace detail

/// Greedy search over single-edge additions, deletions and reversals starting
/// from the empty graph. Each step takes the best strictly improving move; the
/// search stops at a local optimum or after max_iter moves.
inline SearchResult hill_climb(const DataTable& data, const HillClimbOptions& options = {}) {
  if (data.columns() < 2) throw Error(ErrorKind::SchemaMismatch, "structure search needs at least two columns");
  const std::size_t n = data.columns();
  const CandidateMask* mask = options.candidates ? &*options.candidates : nullptr;
  if (mask && (mask->size() != n || std::any_of(mask->begin(), mask->end(),
                                                 [n](const auto& row) { return row.size() != n; })))
    throw Error(ErrorKind::SchemaMismatch, "candidate mask does not match the data columns");

  detail::FamilyCache family(data, options.score);
  auto best = detail::climb(std::vector<std::vector<int>>(n), family, mask, options.max_iter);

  std::mt19937_64 rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) {
    auto start = best.parents;
    detail::perturb(start, mask, static_cast<int>(n), rng);
    auto next = detail::climb(std::move(start), family, mask, options.max_iter);
    if (next.trace.back() > best.trace.back() + detail::kMinImprovement) best = std::move(next);
  }

  return SearchResult{dag_from_parents(data.names(), best.parents), best.trace.back(), std::move(best.trace)};
}

inline SearchResult hill_climb(const DataTable& data, const ScoreKind& kind, int max_iter, std::uint64_t seed) {
  HillClimbOptions options;
  options.score = kind;
  options.max_iter = max_iter;
  options.seed = seed;
  return hill_climb(data, options);
}

}  // namespace catbn::learn
