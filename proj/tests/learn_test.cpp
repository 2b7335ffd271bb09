#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace catbn;
using namespace catbn::learn;

namespace {

Variable bin(const std::string& name) { return Variable::indexed(name, 2); }

DataTable column(const std::vector<int>& values) {
  std::vector<std::vector<int>> rows;
  for (int v : values) rows.push_back({v});
  return DataTable({bin("X")}, std::move(rows));
}

// Binary data sampled from a network over the given edges, with every child
// copying its first parent with probability `strength`.
DataTable generated(const std::vector<std::string>& nodes, const std::vector<Edge>& edges, std::size_t n,
                    std::uint64_t seed, double strength = 0.85) {
  const Dag dag(nodes, edges);
  std::vector<Cpt> cpts;
  for (const auto& name : nodes) {
    std::vector<Variable> ps;
    for (const auto& p : dag.parents(name)) ps.push_back(bin(p));
    std::vector<double> table;
    const std::size_t q = std::size_t{1} << ps.size();
    for (std::size_t c = 0; c < q; ++c) {
      double p1 = 0.5;
      if (ps.size() == 1) p1 = c == 1 ? strength : 1.0 - strength;
      if (ps.size() == 2) p1 = std::vector<double>{0.1, 0.7, 0.7, 0.95}[c];
      table.push_back(1.0 - p1);
      table.push_back(p1);
    }
    cpts.emplace_back(bin(name), std::move(ps), std::move(table));
  }
  std::mt19937_64 rng(seed);
  return fixture::sample(DiscreteBayesNet(dag, std::move(cpts)), rng, n);
}

std::size_t edges_between(const Dag& dag, const std::string& a, const std::string& b) {
  return (dag.has_edge(a, b) ? 1u : 0u) + (dag.has_edge(b, a) ? 1u : 0u);
}

}  // namespace

TEST(Counts, FamilyCounts) {
  const DataTable data({bin("A"), bin("B")}, {{0, 0}, {0, 1}, {1, 1}, {1, 1}, {1, 0}});
  const auto t = count_family(data, "B", {"A"});
  EXPECT_EQ(t.configurations, 2u);
  EXPECT_EQ(t.count(0, 0), 1u);
  EXPECT_EQ(t.count(1, 1), 2u);
  EXPECT_EQ(t.total(), data.size());
}

TEST(FitMle, SingleNode) {
  const auto net = fit_mle(Dag({"X"}, std::vector<Edge>{}), column({1, 1, 1, 0}));
  EXPECT_DOUBLE_EQ(net.cpt("X").row(0)[0], 0.25);
  EXPECT_DOUBLE_EQ(net.cpt("X").row(0)[1], 0.75);
}

TEST(FitMle, EmptyConfigurationIsUniform) {
  const DataTable data({bin("A"), Variable::indexed("B", 3)}, {{0, 0}, {0, 2}});
  const auto net = fit_mle(Dag({"A", "B"}, std::vector<Edge>{{"A", "B"}}), data);
  for (double p : net.cpt("B").row(1)) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(net.cpt("B").row(0)[2], 0.5);
}

TEST(FitMle, SchemaMismatch) {
  try {
    fit_mle(Dag({"X", "Y"}, std::vector<Edge>{}), column({0, 1}));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaMismatch);
  }
}

TEST(FitMle, ReferenceNetworkSpotValues) {
  const auto net = fit_mle(heart::reference_network(), fixture::heart_table());
  EXPECT_NEAR(net.cpt("sex").row(0)[1], 0.6767677, 5e-7);
  EXPECT_NEAR(net.cpt("fbs").row(0)[1], 0.1447811, 5e-7);
  EXPECT_NEAR(net.cpt("restecg").row(0)[0], 0.49494949, 5e-7);
  EXPECT_NEAR(net.cpt("restecg").row(0)[1], 0.01346801, 5e-7);
  EXPECT_NEAR(net.cpt("restecg").row(0)[2], 0.49158249, 5e-7);
  EXPECT_NEAR(net.cpt("target").row(2)[1], 0.7652174, 5e-7);
  EXPECT_NEAR(net.cpt("thalachC").row(0)[0], 0.1504425, 5e-7);
  for (const auto& cpt : net.cpts())
    for (std::size_t c = 0; c < cpt.configurations(); ++c) {
      double s = 0.0;
      for (double p : cpt.row(c)) s += p;
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(FitBayesian, Examples) {
  const Dag dag({"X"}, std::vector<Edge>{});
  const auto data = column({1, 1, 1, 0});
  const auto four = fit_bayesian(dag, data, 4.0);
  EXPECT_DOUBLE_EQ(four.cpt("X").row(0)[0], 0.375);
  EXPECT_DOUBLE_EQ(four.cpt("X").row(0)[1], 0.625);
  EXPECT_NEAR(fit_bayesian(dag, data, 1e-8).cpt("X").row(0)[0], 0.25, 1e-6);
  EXPECT_NEAR(fit_bayesian(dag, data, 1e8).cpt("X").row(0)[0], 0.5, 1e-6);
  for (double bad : {0.0, -1.0}) {
    try {
      fit_bayesian(dag, data, bad);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NonPositiveEss);
    }
  }
}

TEST(FitBayesian, PriorSpreadOverWholeTable) {
  // q = 2, r = 2, ess = 4: pseudo-count 1 per cell, 2 per configuration
  const DataTable data({bin("A"), bin("B")}, {{0, 0}, {0, 0}, {0, 1}});
  const auto net = fit_bayesian(Dag({"A", "B"}, std::vector<Edge>{{"A", "B"}}), data, 4.0);
  EXPECT_DOUBLE_EQ(net.cpt("B").row(0)[0], 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(net.cpt("B").row(1)[0], 0.5);
}

TEST(Score, BicDeterministicColumn) {
  const Dag dag({"X"}, std::vector<Edge>{});
  EXPECT_NEAR(score(dag, column({1, 1, 1, 1}), ScoreKind::bic()), -std::log(4.0) / 2.0, 1e-12);
}

TEST(Score, BdeuMatchesClosedForm) {
  // single binary node, counts (1, 3), ess 2: alpha per state 1
  const double expected = std::lgamma(2.0) - std::lgamma(6.0) + std::lgamma(2.0) + std::lgamma(4.0);
  EXPECT_NEAR(score(Dag({"X"}, std::vector<Edge>{}), column({0, 1, 1, 1}), ScoreKind::bdeu(2.0)), expected, 1e-12);
}

TEST(Score, Decomposable) {
  const auto& data = fixture::heart_table();
  const Dag dag = heart::reference_network();
  for (const auto kind : {ScoreKind::bic(), ScoreKind::bdeu(10.0)}) {
    double sum = 0.0;
    for (const auto& node : dag.nodes()) {
      std::vector<std::size_t> ps;
      for (const auto& p : dag.parents(node)) ps.push_back(data.column(p));
      sum += family_score(data, data.column(node), ps, kind);
    }
    EXPECT_NEAR(score(dag, data, kind), sum, 1e-9);
  }
}

TEST(Score, IndependentEdgeDoesNotHelpBic) {
  const auto data = fixture::pair_data(4, 1000, 0.5);
  const Dag empty({"A", "B"}, std::vector<Edge>{});
  const Dag edge({"A", "B"}, std::vector<Edge>{{"A", "B"}});
  EXPECT_LT(score(edge, data, ScoreKind::bic()), score(empty, data, ScoreKind::bic()));
}

TEST(Score, MarkovEquivalentStructuresScoreAlike) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto data = fixture::pair_data(seed, 200 + 30 * seed, 0.5 + 0.04 * static_cast<double>(seed));
    const Dag ab({"A", "B"}, std::vector<Edge>{{"A", "B"}});
    const Dag ba({"A", "B"}, std::vector<Edge>{{"B", "A"}});
    EXPECT_NEAR(score(ab, data, ScoreKind::bic()), score(ba, data, ScoreKind::bic()), 1e-9);
    EXPECT_NEAR(score(ab, data, ScoreKind::bdeu(5.0)), score(ba, data, ScoreKind::bdeu(5.0)), 1e-9);
  }
}

TEST(HillClimb, DependentAndIndependentPairs) {
  const auto dependent = hill_climb(fixture::pair_data(1, 1000, 0.95), ScoreKind::bic(), 1000, 0);
  EXPECT_EQ(edges_between(dependent.dag, "A", "B"), 1u);
  const auto independent = hill_climb(fixture::pair_data(1, 1000, 0.5), ScoreKind::bic(), 1000, 0);
  EXPECT_EQ(independent.dag.edge_count(), 0u);
}

TEST(HillClimb, TraceStrictlyIncreasesAndBeatsEmptyGraph) {
  const auto& data = fixture::heart_table();
  for (const auto kind : {ScoreKind::bic(), ScoreKind::bdeu(10.0)}) {
    const auto result = hill_climb(data, kind, 1000, 0);
    ASSERT_FALSE(result.trace.empty());
    for (std::size_t i = 1; i < result.trace.size(); ++i) EXPECT_GT(result.trace[i], result.trace[i - 1]);
    const Dag empty(data.names(), std::vector<Edge>{});
    EXPECT_GE(result.score, score(empty, data, kind));
    EXPECT_NEAR(result.score, score(result.dag, data, kind), 1e-6);
    EXPECT_EQ(result.dag.topological_order().size(), data.columns());
  }
}

TEST(HillClimb, MaxIterBoundsMoves) {
  const auto result = hill_climb(fixture::heart_table(), ScoreKind::bic(), 2, 0);
  EXPECT_LE(result.dag.edge_count(), 2u);
  EXPECT_LE(result.trace.size(), 3u);
}

TEST(HillClimb, RestartsNeverLoseScore) {
  HillClimbOptions plain, restarted;
  restarted.restarts = 3;
  restarted.seed = 17;
  const auto& data = fixture::heart_table();
  EXPECT_GE(hill_climb(data, restarted).score, hill_climb(data, plain).score - 1e-9);
}

TEST(CiTest, Examples) {
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 25; ++i)
    for (auto r : {std::vector<int>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) rows.push_back(r);
  const DataTable flat({bin("X"), bin("Y")}, rows);
  const auto indep = ci_test(flat, "X", "Y", {}, 0.05);
  EXPECT_DOUBLE_EQ(indep.statistic, 0.0);
  EXPECT_DOUBLE_EQ(indep.p_value, 1.0);
  EXPECT_TRUE(indep.independent);

  std::vector<std::vector<int>> same;
  for (int i = 0; i < 100; ++i) same.push_back({i % 2, i % 2});
  const auto dep = ci_test(DataTable({bin("X"), bin("Y")}, same), "X", "Y", {}, 0.05);
  EXPECT_NEAR(dep.statistic, 100.0, 1e-9);
  EXPECT_EQ(dep.dof, 1);
  EXPECT_LT(dep.p_value, 1e-20);
  EXPECT_FALSE(dep.independent);

  try {
    ci_test(flat, "X", "Y", {}, 1.5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(CiTest, EmptyStrataDropFromDegreesOfFreedom) {
  // Z has three states but only two occur
  const DataTable data({bin("X"), bin("Y"), Variable::indexed("Z", 3)},
                       {{0, 0, 0}, {1, 1, 0}, {0, 1, 0}, {1, 0, 1}, {0, 0, 1}, {1, 1, 1}});
  EXPECT_EQ(ci_test(data, "X", "Y", {"Z"}, 0.05).dof, 2);
}

TEST(CiTest, CommonCauseScreensOff) {
  int independent = 0, marginal_dependent = 0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    const auto data = generated({"x", "y", "z"}, {{"z", "x"}, {"z", "y"}}, 2000, static_cast<std::uint64_t>(s));
    if (ci_test(data, "x", "y", {"z"}, 0.05).independent) ++independent;
    if (!ci_test(data, "x", "y", {}, 0.05).independent) ++marginal_dependent;
  }
  EXPECT_GE(independent, 45);
  EXPECT_EQ(marginal_dependent, seeds);
}

TEST(Skeleton, IndependentColumns) {
  const auto data = generated({"A", "B", "C"}, {}, 1000, 3);
  EXPECT_TRUE(learn_skeleton(data, 0.01).edges().empty());
}

TEST(Skeleton, ChainRecoversSepset) {
  const auto data = generated({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}}, 2000, 5);
  const auto skel = learn_skeleton(data, 0.05);
  EXPECT_EQ(skel.edges(), (std::vector<std::pair<std::string, std::string>>{{"A", "B"}, {"B", "C"}}));
  EXPECT_EQ(skel.sepset("A", "C"), NameSet{"B"});
  EXPECT_FALSE(skel.sepset("A", "B").has_value());
}

TEST(Skeleton, ColliderAtOrderZero) {
  const auto data = generated({"A", "B", "C"}, {{"A", "C"}, {"B", "C"}}, 2000, 8);
  const auto skel = learn_skeleton(data, 0.05, 0);
  EXPECT_TRUE(skel.adjacent("A", "C"));
  EXPECT_TRUE(skel.adjacent("B", "C"));
  EXPECT_FALSE(skel.adjacent("A", "B"));
  EXPECT_EQ(skel.sepset("A", "B"), NameSet{});
  const auto dag = orient(skel).dag;
  EXPECT_TRUE(dag.has_edge("A", "C"));
  EXPECT_TRUE(dag.has_edge("B", "C"));
}

TEST(Skeleton, RowOrderIndependent) {
  const auto data = generated({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"A", "D"}}, 800, 12);
  auto rows = data.rows();
  std::mt19937_64 rng(1);
  std::shuffle(rows.begin(), rows.end(), rng);
  const DataTable shuffled(data.schema(), rows);
  EXPECT_EQ(learn_skeleton(data, 0.05).edges(), learn_skeleton(shuffled, 0.05).edges());
}

TEST(Orient, VStructure) {
  Skeleton skel({"A", "B", "C"});
  skel.connect(0, 2);
  skel.connect(1, 2);
  skel.separate(0, 1, {});
  const auto result = orient(skel);
  EXPECT_TRUE(result.dag.has_edge("A", "C"));
  EXPECT_TRUE(result.dag.has_edge("B", "C"));
  EXPECT_EQ(result.dag.edge_count(), 2u);
}

TEST(Orient, ChainUsesLexicographicFallback) {
  Skeleton skel({"A", "B", "C"});
  skel.connect(0, 1);
  skel.connect(1, 2);
  skel.separate(0, 2, {1});
  const auto dag = orient(skel).dag;
  EXPECT_TRUE(dag.has_edge("A", "B"));
  EXPECT_TRUE(dag.has_edge("B", "C"));
}

TEST(Orient, MeekRuleOnePropagates) {
  // A -> C <- B, C - D with D separated from A and B by C: C -> D
  Skeleton skel({"A", "B", "C", "D"});
  skel.connect(0, 2);
  skel.connect(1, 2);
  skel.connect(2, 3);
  skel.separate(0, 1, {});
  skel.separate(0, 3, {2});
  skel.separate(1, 3, {2});
  const auto dag = orient(skel).dag;
  EXPECT_TRUE(dag.has_edge("C", "D"));
}

TEST(Orient, RandomSkeletonsGiveAcyclicGraphs) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    Skeleton skel(names);
    std::bernoulli_distribution coin(0.5);
    for (int a = 0; a < static_cast<int>(n); ++a)
      for (int b = a + 1; b < static_cast<int>(n); ++b) {
        if (coin(rng)) {
          skel.connect(a, b);
        } else {
          std::vector<int> sep;
          for (int c = 0; c < static_cast<int>(n); ++c)
            if (c != a && c != b && coin(rng)) sep.push_back(c);
          skel.separate(a, b, sep);
        }
      }
    const auto result = orient(skel);
    EXPECT_EQ(result.dag.topological_order().size(), n);
    std::size_t adjacent_pairs = skel.edges().size();
    EXPECT_EQ(result.dag.edge_count(), adjacent_pairs);
    for (const auto& [a, b] : skel.edges()) EXPECT_EQ(edges_between(result.dag, a, b), 1u);
  }
}

TEST(Hybrid, IndependentDataGivesEmptyGraph) {
  const auto data = generated({"A", "B", "C"}, {}, 1000, 3);
  EXPECT_EQ(hybrid_learn(data, 0.05, ScoreKind::bic()).dag.edge_count(), 0u);
}

TEST(Hybrid, StaysInsideSkeletonAndUnderUnrestrictedScore) {
  const auto data = generated({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}}, 2000, 6);
  const auto skel = learn_skeleton(data, 0.05);
  const auto hybrid = hybrid_learn(data, 0.05, ScoreKind::bic());
  for (const auto& [from, to] : hybrid.dag.edges()) EXPECT_TRUE(skel.adjacent(from, to)) << from << "-" << to;
  EXPECT_LE(hybrid.score, hill_climb(data, ScoreKind::bic(), 1000, 0).score + 1e-9);

  const auto& heart = fixture::heart_table();
  EXPECT_LE(hybrid_learn(heart, 0.05, ScoreKind::bic()).score, hill_climb(heart, ScoreKind::bic(), 1000, 0).score + 1e-9);
}
