#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/inference.hpp"
#include "catbn/network.hpp"

namespace catbn {

/// Class prior plus one P(feature | class) table per feature.
struct NbModel {
  Variable class_variable;
  std::vector<Variable> features;
  std::vector<double> prior;                          // P(c)
  std::vector<std::vector<double>> conditionals;      // per feature: [c * r + x] = P(x | c)
  double pseudo = 1.0;

  /// The equivalent star network class -> feature_i.
  DiscreteBayesNet to_network() const {
    std::vector<std::string> nodes{class_variable.name()};
    std::vector<Edge> edges;
    for (const auto& f : features) {
      nodes.push_back(f.name());
      edges.emplace_back(class_variable.name(), f.name());
    }
    std::vector<Cpt> cpts{Cpt(class_variable, {}, prior)};
    for (std::size_t i = 0; i < features.size(); ++i) cpts.emplace_back(features[i], std::vector<Variable>{class_variable}, conditionals[i]);
    return DiscreteBayesNet(Dag(std::move(nodes), edges), std::move(cpts));
  }
};

/// Smoothed relative frequencies (N + pseudo) / (total + pseudo * r); every
/// column other than class_var becomes a feature.
inline NbModel nb_fit(const DataTable& data, const std::string& class_var, double pseudo = 1.0) {
  if (!(pseudo >= 0.0)) throw Error(ErrorKind::InvalidArgument, "pseudo-count must be non-negative");
  const std::size_t cls = data.column(class_var);
  const auto& schema = data.schema();
  const std::size_t k = schema[cls].cardinality();

  NbModel m{schema[cls], {}, {}, {}, pseudo};
  std::vector<double> class_counts(k, 0.0);
  for (const auto& row : data.rows()) class_counts[row[cls]] += 1.0;
  const double n = static_cast<double>(data.size());
  for (std::size_t c = 0; c < k; ++c) {
    const double denom = n + pseudo * static_cast<double>(k);
    m.prior.push_back(denom > 0.0 ? (class_counts[c] + pseudo) / denom : 1.0 / static_cast<double>(k));
  }

  for (std::size_t f = 0; f < schema.size(); ++f) {
    if (f == cls) continue;
    const std::size_t r = schema[f].cardinality();
    std::vector<double> counts(k * r, 0.0);
    for (const auto& row : data.rows()) counts[row[cls] * r + row[f]] += 1.0;
    std::vector<double> table(k * r);
    for (std::size_t c = 0; c < k; ++c) {
      const double denom = class_counts[c] + pseudo * static_cast<double>(r);
      for (std::size_t x = 0; x < r; ++x)
        table[c * r + x] = denom > 0.0 ? (counts[c * r + x] + pseudo) / denom : 1.0 / static_cast<double>(r);
    }
    m.features.push_back(schema[f]);
    m.conditionals.push_back(std::move(table));
  }
  return m;
}

/// Posterior over the class from the supplied features, accumulated in log
/// space. Features absent from the evidence are skipped.
inline Classification nb_predict(const NbModel& model, const Assignment& evidence) {
  const std::size_t k = model.class_variable.cardinality();
  std::vector<double> logp(k);
  for (std::size_t c = 0; c < k; ++c) logp[c] = std::log(model.prior[c]);

  for (const auto& [name, state] : evidence) {
    std::size_t f = 0;
    while (f < model.features.size() && model.features[f].name() != name) ++f;
    if (f == model.features.size())
      throw Error(ErrorKind::InvalidAssignment, "'" + name + "' is not a feature of the model");
    const std::size_t r = model.features[f].cardinality();
    if (state < 0 || static_cast<std::size_t>(state) >= r)
      throw Error(ErrorKind::InvalidAssignment, "state " + std::to_string(state) + " out of range for '" + name + "'");
    for (std::size_t c = 0; c < k; ++c) logp[c] += std::log(model.conditionals[f][c * r + static_cast<std::size_t>(state)]);
  }

  double top = -std::numeric_limits<double>::infinity();
  for (double v : logp) top = std::max(top, v);
  if (top == -std::numeric_limits<double>::infinity())
    throw Error(ErrorKind::ZeroEvidence, "every class has zero posterior probability");
  std::vector<double> post(k);
  double z = 0.0;
  for (std::size_t c = 0; c < k; ++c) z += post[c] = std::exp(logp[c] - top);
  for (double& p : post) p /= z;

  int best = 0;
  for (std::size_t c = 1; c < k; ++c)
    if (post[c] > post[best]) best = static_cast<int>(c);
  return Classification{best, Posterior{model.class_variable, std::move(post)}};
}

}  // namespace catbn
