#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "catbn/dag.hpp"
#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/learn/counts.hpp"
#include "catbn/learn/parameters.hpp"

namespace catbn::learn {

struct ScoreKind {
  enum class Type { Bic, Bdeu };

  Type type = Type::Bic;
  double ess = 10.0;  // BDeu only

  static ScoreKind bic() { return {Type::Bic, 10.0}; }
  static ScoreKind bdeu(double ess = 10.0) { return {Type::Bdeu, ess}; }

  std::string name() const { return type == Type::Bic ? "bic" : "bdeu"; }
};

inline double bic_family(const CountTable& t, std::size_t rows) {
  double ll = 0.0;
  for (std::size_t c = 0; c < t.configurations; ++c) {
    if (t.totals[c] == 0) continue;
    const double n_c = static_cast<double>(t.totals[c]);
    for (std::size_t s = 0; s < t.cardinality; ++s) {
      const auto n = t.count(c, s);
      if (n > 0) ll += static_cast<double>(n) * std::log(static_cast<double>(n) / n_c);
    }
  }
  const double free_params = static_cast<double>(t.configurations * (t.cardinality - 1));
  const double log_n = rows > 0 ? std::log(static_cast<double>(rows)) : 0.0;
  return ll - 0.5 * log_n * free_params;
}

/// log marginal likelihood of the family under a uniform Dirichlet prior of
/// total weight ess.
inline double bdeu_family(const CountTable& t, double ess) {
  const double q = static_cast<double>(t.configurations);
  const double r = static_cast<double>(t.cardinality);
  const double a_c = ess / q;
  const double a_cs = ess / (r * q);
  double s = 0.0;
  for (std::size_t c = 0; c < t.configurations; ++c) {
    s += std::lgamma(a_c) - std::lgamma(a_c + static_cast<double>(t.totals[c]));
    for (std::size_t k = 0; k < t.cardinality; ++k)
      s += std::lgamma(a_cs + static_cast<double>(t.count(c, k))) - std::lgamma(a_cs);
  }
  return s;
}

inline double family_score(const DataTable& data, std::size_t variable, const std::vector<std::size_t>& parents,
                           const ScoreKind& kind) {
  const auto t = count_family(data, variable, parents);
  if (kind.type == ScoreKind::Type::Bic) return bic_family(t, data.size());
  if (!(kind.ess > 0.0)) throw Error(ErrorKind::NonPositiveEss, "BDeu needs a positive equivalent sample size");
  return bdeu_family(t, kind.ess);
}

/// Decomposable network score: the sum of per-node family scores.
inline double score(const Dag& dag, const DataTable& data, const ScoreKind& kind) {
  const auto cols = detail::column_map(dag, data);
  double total = 0.0;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    std::vector<std::size_t> ps;
    for (int p : dag.parents(static_cast<int>(i))) ps.push_back(cols[p]);
    total += family_score(data, cols[i], ps, kind);
  }
  return total;
}

}  // namespace catbn::learn
