#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catbn/dag.hpp"
#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/learn/counts.hpp"
#include "catbn/network.hpp"

namespace catbn::learn {

namespace detail {

/// Column index of every dag node, checking the schema covers the graph.
inline std::vector<std::size_t> column_map(const Dag& dag, const DataTable& data) {
  std::vector<std::size_t> cols;
  for (const auto& name : dag.nodes()) {
    if (!data.has_column(name))
      throw Error(ErrorKind::SchemaMismatch, "data has no column for node '" + name + "'");
    cols.push_back(data.column(name));
  }
  return cols;
}

template <class EntryFn>
DiscreteBayesNet fit(const Dag& dag, const DataTable& data, EntryFn entry) {
  const auto cols = column_map(dag, data);
  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    std::vector<std::size_t> pcols;
    std::vector<Variable> pvars;
    for (int p : dag.parents(static_cast<int>(i))) {
      pcols.push_back(cols[p]);
      pvars.push_back(data.schema()[cols[p]]);
    }
    const auto counts = count_family(data, cols[i], pcols);
    std::vector<double> table(counts.configurations * counts.cardinality);
    for (std::size_t c = 0; c < counts.configurations; ++c) {
      for (std::size_t s = 0; s < counts.cardinality; ++s) table[c * counts.cardinality + s] = entry(counts, c, s);
    }
    cpts.emplace_back(data.schema()[cols[i]], std::move(pvars), std::move(table));
  }
  return DiscreteBayesNet(dag, std::move(cpts));
}

}  // namespace detail

/// Relative-frequency estimates N(x,pa)/N(pa); unseen parent configurations
/// get a uniform row.
inline DiscreteBayesNet fit_mle(const Dag& dag, const DataTable& data) {
  return detail::fit(dag, data, [](const CountTable& t, std::size_t c, std::size_t s) {
    if (t.totals[c] == 0) return 1.0 / static_cast<double>(t.cardinality);
    return static_cast<double>(t.count(c, s)) / static_cast<double>(t.totals[c]);
  });
}

/// Posterior-mean estimates under a uniform Dirichlet prior with equivalent
/// sample size `ess` spread over the whole table (BDeu-style):
/// (N(x,pa) + ess/(r q)) / (N(pa) + ess/q).
inline DiscreteBayesNet fit_bayesian(const Dag& dag, const DataTable& data, double ess) {
  if (!(ess > 0.0)) throw Error(ErrorKind::NonPositiveEss, "equivalent sample size must be positive");
  return detail::fit(dag, data, [ess](const CountTable& t, std::size_t c, std::size_t s) {
    const double q = static_cast<double>(t.configurations);
    const double r = static_cast<double>(t.cardinality);
    return (static_cast<double>(t.count(c, s)) + ess / (r * q)) / (static_cast<double>(t.totals[c]) + ess / q);
  });
}

}  // namespace catbn::learn
