#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catbn/error.hpp"
#include "catbn/factor.hpp"
#include "catbn/network.hpp"

namespace catbn {

/// Normalized distribution of one variable.
struct Posterior {
  Variable variable;
  std::vector<double> probabilities;

  double operator[](std::size_t state) const { return probabilities[state]; }
};

struct Classification {
  int state;
  Posterior posterior;
};

namespace detail {

inline int checked_query(const DiscreteBayesNet& net, const std::string& query,
                         const std::vector<int>& evidence) {
  if (!net.dag().contains(query)) throw Error(ErrorKind::UnknownNode, "unknown query variable '" + query + "'");
  const int q = net.dag().index_of(query);
  if (evidence[q] >= 0)
    throw Error(ErrorKind::InvalidArgument, "query variable '" + query + "' is also in the evidence");
  return q;
}

inline Posterior normalize(const Variable& var, std::vector<double> weights) {
  double z = 0.0;
  for (double w : weights) z += w;
  if (z == 0.0) throw Error(ErrorKind::ZeroEvidence, "evidence has probability zero");
  for (double& w : weights) w /= z;
  return Posterior{var, std::move(weights)};
}

}  // namespace detail

/// P(query | evidence) by summing the chain-rule joint over every completion.
/// Exponential in the number of unobserved variables; used as a reference.
inline Posterior posterior_enumeration(const DiscreteBayesNet& net, const std::string& query,
                                       const Assignment& evidence) {
  auto states = net.dense(evidence);
  const int q = detail::checked_query(net, query, states);

  std::vector<std::size_t> cards(net.size());
  std::vector<int> free;
  for (std::size_t i = 0; i < net.size(); ++i) {
    cards[i] = net.variable(static_cast<int>(i)).cardinality();
    if (states[i] < 0) {
      free.push_back(static_cast<int>(i));
      states[i] = 0;
    }
  }
  std::vector<double> weights(cards[q], 0.0);
  do {
    weights[states[q]] += net.joint_dense(states);
  } while (next_configuration(states, free, cards));
  return detail::normalize(net.variable(q), std::move(weights));
}

/// Min-degree elimination order over the interaction graph of `factors`,
/// ties broken by variable name. Only variables flagged in `eliminate` are ordered.
inline std::vector<int> min_degree_order(const DiscreteBayesNet& net, const std::vector<Factor>& factors,
                                         const std::vector<bool>& eliminate) {
  const std::size_t n = net.size();
  std::vector<std::set<int>> adj(n);
  for (const auto& f : factors)
    for (int a : f.scope)
      for (int b : f.scope)
        if (a != b) adj[a].insert(b);

  std::vector<bool> pending = eliminate;
  std::vector<int> order;
  while (true) {
    int best = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!pending[v]) continue;
      const int vi = static_cast<int>(v);
      if (best < 0 || adj[v].size() < adj[best].size() ||
          (adj[v].size() == adj[best].size() && net.dag().name(vi) < net.dag().name(best)))
        best = vi;
    }
    if (best < 0) break;
    pending[best] = false;
    order.push_back(best);
    std::vector<int> nbrs(adj[best].begin(), adj[best].end());
    for (int a : nbrs) {
      adj[a].erase(best);
      for (int b : nbrs)
        if (a != b) adj[a].insert(b);
    }
    adj[best].clear();
  }
  return order;
}

/// P(query | evidence) by variable elimination: factors are sliced on the
/// evidence first, hidden variables are summed out in min-degree order, and
/// the result is normalized once at the end.
inline Posterior posterior_ve(const DiscreteBayesNet& net, const std::string& query,
                              const Assignment& evidence) {
  const auto states = net.dense(evidence);
  const int q = detail::checked_query(net, query, states);

  std::vector<Factor> factors;
  factors.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    Factor f = cpt_factor(net, static_cast<int>(i));
    for (std::size_t v = 0; v < net.size(); ++v)
      if (states[v] >= 0) f = reduce(f, static_cast<int>(v), states[v]);
    factors.push_back(std::move(f));
  }

  std::vector<bool> hidden(net.size(), false);
  for (std::size_t v = 0; v < net.size(); ++v) hidden[v] = states[v] < 0 && static_cast<int>(v) != q;

  for (int var : min_degree_order(net, factors, hidden)) {
    std::vector<Factor> rest;
    Factor product{{}, {}, {1.0}};
    for (auto& f : factors) {
      if (f.contains(var))
        product = multiply(product, f);
      else
        rest.push_back(std::move(f));
    }
    rest.push_back(marginalize(product, var));
    factors = std::move(rest);
  }

  Factor result{{}, {}, {1.0}};
  for (const auto& f : factors) result = multiply(result, f);
  // the query's own CPT keeps it in scope; everything else is reduced or eliminated
  return detail::normalize(net.variable(q), std::move(result.values));
}

/// Most probable state of class_var given the evidence; ties go to the lower index.
inline Classification classify(const DiscreteBayesNet& net, const std::string& class_var,
                               const Assignment& evidence) {
  Posterior post = posterior_ve(net, class_var, evidence);
  int best = 0;
  for (std::size_t s = 1; s < post.probabilities.size(); ++s)
    if (post.probabilities[s] > post.probabilities[best]) best = static_cast<int>(s);
  return Classification{best, std::move(post)};
}

}  // namespace catbn
