#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "catbn/catbn.hpp"

namespace catbn::fixture {

inline std::string data_path(const std::string& file) { return std::string(CATBN_DATA_DIR) + "/" + file; }

/// The 297-row discretized table built with the default cutpoints.
inline const DataTable& heart_table() {
  static const DataTable table = heart::discretize(heart::clean(heart::load_raw(data_path("processed.cleveland.data"))),
                                                   heart::CutpointConfig::defaults());
  return table;
}

/// Random DAG on n nodes named "v0".. with edges following a shuffled order,
/// so topological order and name order disagree.
inline Dag random_dag(std::mt19937_64& rng, std::size_t n, double edge_prob) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(edge_prob);
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (coin(rng)) edges.emplace_back(names[order[a]], names[order[b]]);
  return Dag(names, edges);
}

inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t k, double zero_prob = 0.0) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::bernoulli_distribution zero(zero_prob);
  std::vector<double> p(k);
  double z = 0.0;
  for (auto& v : p) z += v = zero(rng) ? 0.0 : u(rng);
  if (z == 0.0) {
    p[0] = 1.0;
    return p;
  }
  for (auto& v : p) v /= z;
  return p;
}

/// Random CPTs over a DAG; cards[i] is node i's cardinality.
inline DiscreteBayesNet random_network(std::mt19937_64& rng, const Dag& dag, const std::vector<std::size_t>& cards,
                                       double zero_prob = 0.0) {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < dag.size(); ++i) vars.push_back(Variable::indexed(dag.name(static_cast<int>(i)), cards[i]));
  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    std::vector<Variable> parents;
    std::size_t q = 1;
    for (int p : dag.parents(static_cast<int>(i))) {
      parents.push_back(vars[static_cast<std::size_t>(p)]);
      q *= cards[static_cast<std::size_t>(p)];
    }
    std::vector<double> table;
    for (std::size_t c = 0; c < q; ++c)
      for (double v : random_distribution(rng, cards[i], zero_prob)) table.push_back(v);
    cpts.emplace_back(vars[i], std::move(parents), std::move(table));
  }
  return DiscreteBayesNet(dag, std::move(cpts));
}

inline DiscreteBayesNet random_binary_network(std::mt19937_64& rng, std::size_t n, double edge_prob,
                                              double zero_prob = 0.0) {
  return random_network(rng, random_dag(rng, n, edge_prob), std::vector<std::size_t>(n, 2), zero_prob);
}

/// Forward sampling in topological order.
inline DataTable sample(const DiscreteBayesNet& net, std::mt19937_64& rng, std::size_t n) {
  const auto& dag = net.dag();
  std::vector<std::vector<int>> rows;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<int> row(dag.size(), 0);
    for (int i : dag.topological_indices()) {
      std::vector<int> ps;
      for (int p : dag.parents(i)) ps.push_back(row[static_cast<std::size_t>(p)]);
      const double x = u(rng);
      double acc = 0.0;
      const auto& cpt = net.cpt(i);
      int s = 0;
      for (; s + 1 < static_cast<int>(cpt.variable().cardinality()); ++s) {
        acc += cpt.probability(std::span<const int>(ps), s);
        if (x < acc) break;
      }
      row[static_cast<std::size_t>(i)] = s;
    }
    rows.push_back(std::move(row));
  }
  return DataTable(net.variables(), std::move(rows));
}

/// Path-enumeration d-separation: every simple undirected path between x and y
/// is checked against the blocking rules directly.
inline bool path_d_separated(const Dag& dag, const NameSet& xs, const NameSet& ys, const NameSet& zs) {
  const std::size_t n = dag.size();
  std::vector<bool> in_z(n, false);
  for (const auto& z : zs) in_z[static_cast<std::size_t>(dag.index_of(z))] = true;
  auto collider_open = [&](int c) {
    if (in_z[static_cast<std::size_t>(c)]) return true;
    const auto desc = dag.descendants(c);
    for (std::size_t d = 0; d < n; ++d)
      if (desc[d] && in_z[d]) return true;
    return false;
  };
  auto edge = [&](int a, int b) { return dag.has_edge(dag.name(a), dag.name(b)); };

  std::vector<int> path;
  std::vector<bool> on_path(n, false);
  std::function<bool(int, int)> active_path_exists = [&](int at, int target) -> bool {
    if (at == target) {
      for (std::size_t k = 1; k + 1 < path.size(); ++k) {
        const int prev = path[k - 1], mid = path[k], next = path[k + 1];
        const bool collider = edge(prev, mid) && edge(next, mid);
        if (collider ? !collider_open(mid) : in_z[static_cast<std::size_t>(mid)]) return false;
      }
      return true;
    }
    for (int nb = 0; nb < static_cast<int>(n); ++nb) {
      if (on_path[static_cast<std::size_t>(nb)] || !(edge(at, nb) || edge(nb, at))) continue;
      on_path[static_cast<std::size_t>(nb)] = true;
      path.push_back(nb);
      const bool found = active_path_exists(nb, target);
      path.pop_back();
      on_path[static_cast<std::size_t>(nb)] = false;
      if (found) return true;
    }
    return false;
  };

  for (const auto& x : xs)
    for (const auto& y : ys) {
      const int a = dag.index_of(x), b = dag.index_of(y);
      path.assign(1, a);
      on_path.assign(n, false);
      on_path[static_cast<std::size_t>(a)] = true;
      if (active_path_exists(a, b)) return false;
    }
  return true;
}

/// All subsets of `pool` with at most max_size members.
inline std::vector<NameSet> subsets_up_to(const std::vector<std::string>& pool, std::size_t max_size) {
  std::vector<NameSet> out;
  const std::size_t n = pool.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > max_size) continue;
    NameSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.insert(pool[i]);
    out.push_back(std::move(s));
  }
  return out;
}

/// Two binary columns A, B; B copies A with probability `agreement`
/// (0.5 gives independent columns).
inline DataTable pair_data(std::uint64_t seed, std::size_t n, double agreement) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5), same(agreement);
  std::vector<std::vector<int>> rows;
  for (std::size_t r = 0; r < n; ++r) {
    const int a = coin(rng);
    rows.push_back({a, same(rng) ? a : 1 - a});
  }
  return DataTable({Variable::indexed("A", 2), Variable::indexed("B", 2)}, std::move(rows));
}

/// Printed CPT entries: rows[c][s] is P(state s | parent configuration c).
struct GoldenCpt {
  std::string variable;
  std::vector<std::vector<double>> rows;
};

/// Values as printed, transposed so each inner list is one parent
/// configuration (the printed tables put parent states in columns).
inline const std::vector<GoldenCpt>& golden_unbinned() {
  static const std::vector<GoldenCpt> g = {
      {"sex", {{0.3232323, 0.6767677}}},
      {"cp", {{0.10000000, 0.25000000, 0.40625000, 0.24375000}, {0.05109489, 0.06569343, 0.1313868, 0.75182482}}},
      {"fbs", {{0.8552189, 0.1447811}}},
      {"restecg", {{0.49494949, 0.01346801, 0.49158249}}},
      {"exang",
       {{0.82608696, 0.17391304}, {0.91836735, 0.08163265}, {0.86746988, 0.13253012}, {0.45070423, 0.54929577}}},
      {"slope", {{0.64375000, 0.30000000, 0.05625000}, {0.26277372, 0.64963504, 0.08759124}}},
      {"ca", {{0.8062500, 0.1312500, 0.0437500, 0.0187500}, {0.3284672, 0.3211679, 0.2262774, 0.1240876}}},
      {"thal", {{0.83333333, 0.01041667, 0.15625000}, {0.41791045, 0.08457711, 0.49751244}}},
      {"target", {{0.7743902, 0.2256098}, {0.3333333, 0.6666667}, {0.2347826, 0.7652174}}},
  };
  return g;
}

/// Binned families: ageC|ca, trestbpsC|ageC, cholC, thalachC|slope,exang and
/// oldpeakC|slope,target. The last two use configuration-major order with the
/// last parent fastest.
inline const std::vector<GoldenCpt>& golden_binned() {
  static const std::vector<GoldenCpt> g = {
      {"ageC",
       {{0.31034483, 0.60344828, 0.08620690},
        {0.07692308, 0.75384615, 0.16923077},
        {0.02631579, 0.73684211, 0.23684211},
        {0.05000000, 0.65000000, 0.30000000}}},
      {"trestbpsC",
       {{0.54098361, 0.39344262, 0.06557377}, {0.25641026, 0.51794872, 0.22564103}, {0.34146341, 0.21951220, 0.43902439}}},
      {"cholC", {{0.1649832, 0.3265993, 0.5084175}}},
      {"thalachC",
       {{0.1504425, 0.8495575},
        {0.3461538, 0.6538462},
        {0.4133333, 0.5866667},
        {0.7580645, 0.2419355},
        {0.1666667, 0.8333333},
        {0.7777778, 0.2222222}}},
      {"oldpeakC",
       {{0.990291262, 0.009708738},
        {0.944444444, 0.055555556},
        {0.958333333, 0.041666667},
        {0.651685393, 0.348314607},
        {0.555555556, 0.444444444},
        {0.166666667, 0.833333333}}},
  };
  return g;
}

/// Largest |fitted - printed| over one golden family.
inline double golden_error(const DiscreteBayesNet& net, const GoldenCpt& g) {
  const auto& cpt = net.cpt(g.variable);
  double worst = 0.0;
  for (std::size_t c = 0; c < g.rows.size(); ++c)
    for (std::size_t s = 0; s < g.rows[c].size(); ++s)
      worst = std::max(worst, std::abs(cpt.row(c)[s] - g.rows[c][s]));
  if (cpt.configurations() != g.rows.size()) return 1.0;
  return worst;
}

}  // namespace catbn::fixture
