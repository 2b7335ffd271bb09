#pragma once

#include <cstddef>

#include "catbn/data_table.hpp"
#include "catbn/learn/constraint.hpp"
#include "catbn/learn/hill_climb.hpp"

namespace catbn::learn {

/// Restricts hill climbing to the pairs left adjacent by learn_skeleton.
inline CandidateMask skeleton_mask(const Skeleton& skel) {
  CandidateMask mask(skel.size(), std::vector<bool>(skel.size(), false));
  for (std::size_t a = 0; a < skel.size(); ++a)
    for (int b : skel.neighbors(static_cast<int>(a))) mask[a][static_cast<std::size_t>(b)] = true;
  return mask;
}

/// Constraint-based skeleton discovery followed by score-based search inside it.
inline SearchResult hybrid_learn(const DataTable& data, double alpha, const ScoreKind& kind, int max_sepset = -1,
                                 int max_iter = 1000) {
  HillClimbOptions options;
  options.score = kind;
  options.max_iter = max_iter;
  options.candidates = skeleton_mask(learn_skeleton(data, alpha, max_sepset));
  return hill_climb(data, options);
}

}  // namespace catbn::learn
