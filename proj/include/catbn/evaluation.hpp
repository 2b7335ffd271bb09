#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <string>
#include <vector>

#include <json.hpp>

#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/graph_queries.hpp"
#include "catbn/heart_network.hpp"
#include "catbn/inference.hpp"
#include "catbn/learn/constraint.hpp"
#include "catbn/learn/hill_climb.hpp"
#include "catbn/learn/hybrid.hpp"
#include "catbn/learn/parameters.hpp"
#include "catbn/naive_bayes.hpp"

namespace catbn::eval {

/// Binary confusion counts; the positive class is label 1.
struct ConfusionMatrix {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // false when the denominator was zero and the value was set to 0
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;
};

/// Rows are actual labels, columns predicted.
inline ConfusionMatrix confusion(const std::vector<int>& predicted, const std::vector<int>& actual) {
  if (predicted.size() != actual.size())
    throw Error(ErrorKind::LengthMismatch, std::to_string(predicted.size()) + " predictions for " +
                                               std::to_string(actual.size()) + " labels");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i], a = actual[i];
    if ((p != 0 && p != 1) || (a != 0 && a != 1))
      throw Error(ErrorKind::InvalidArgument, "confusion matrix labels must be 0 or 1");
    if (a == 1)
      (p == 1 ? cm.tp : cm.fn)++;
    else
      (p == 1 ? cm.fp : cm.tn)++;
  }
  return cm;
}

inline Metrics metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorKind::EmptyMatrix, "no evaluated rows");
  Metrics m;
  const auto d = [](std::uint64_t v) { return static_cast<double>(v); };
  m.accuracy = d(cm.tp + cm.tn) / d(cm.total());
  m.precision_defined = cm.tp + cm.fp > 0;
  m.precision = m.precision_defined ? d(cm.tp) / d(cm.tp + cm.fp) : 0.0;
  m.recall_defined = cm.tp + cm.fn > 0;
  m.recall = m.recall_defined ? d(cm.tp) / d(cm.tp + cm.fn) : 0.0;
  m.f1_defined = m.precision + m.recall > 0.0;
  m.f1 = m.f1_defined ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

enum class ModelKind { BnPaper, BnLearned, NaiveBayes };
enum class Learner { HillClimb, Pc, Hybrid };
enum class Estimator { Mle, Bayes };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::BnPaper: return "bn-paper";
    case ModelKind::BnLearned: return "bn-learned";
    case ModelKind::NaiveBayes: return "nb";
  }
  return "?";
}

inline std::string to_string(Learner l) {
  switch (l) {
    case Learner::HillClimb: return "hc";
    case Learner::Pc: return "pc";
    case Learner::Hybrid: return "hybrid";
  }
  return "?";
}

inline std::string to_string(Estimator e) { return e == Estimator::Mle ? "mle" : "bayes"; }

struct ExperimentConfig {
  ModelKind model_kind = ModelKind::BnPaper;
  Learner learner = Learner::HillClimb;  // bn-learned only
  double ratio = 0.8;
  std::vector<std::uint64_t> seeds{0};
  Estimator estimator = Estimator::Mle;
  double ess = 10.0;
  learn::ScoreKind score = learn::ScoreKind::bic();
  double alpha = 0.05;
  double pseudo = 1.0;  // naive Bayes smoothing
  std::string class_variable = heart::kClassVariable;
};

struct SeedResult {
  std::uint64_t seed = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  ConfusionMatrix confusion;
  Metrics metrics;
  /// Test rows whose full evidence had probability zero under the fitted
  /// network; these were classified from the Markov-blanket evidence, or the
  /// class prior if that was zero too.
  std::size_t zero_evidence_rows = 0;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single seed
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<SeedResult> per_seed;  // ascending seed order
  Summary accuracy, precision, recall, f1;
};

/// Structure the given model kind uses on this training set.
inline Dag experiment_structure(const ExperimentConfig& cfg, const DataTable& train) {
  switch (cfg.learner) {
    case Learner::HillClimb: {
      learn::HillClimbOptions options;
      options.score = cfg.score;
      return learn::hill_climb(train, options).dag;
    }
    case Learner::Pc:
      return learn::orient(learn::learn_skeleton(train, cfg.alpha)).dag;
    case Learner::Hybrid:
      return learn::hybrid_learn(train, cfg.alpha, cfg.score).dag;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown learner");
}

namespace detail {

inline Classification classify_row(const DiscreteBayesNet& net, const std::string& cls, const Assignment& evidence,
                                   std::size_t& zero_evidence_rows) {
  try {
    return classify(net, cls, evidence);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroEvidence) throw;
  }
  ++zero_evidence_rows;
  const auto blanket = markov_blanket(net.dag(), cls);
  Assignment reduced;
  for (const auto& [name, state] : evidence)
    if (blanket.count(name)) reduced[name] = state;
  try {
    return classify(net, cls, reduced);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroEvidence) throw;
  }
  return classify(net, cls, {});
}

inline Summary summarize(const std::vector<double>& values) {
  Summary s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace detail

/// One split, fit and test-set evaluation.
inline SeedResult run_seed(const DataTable& table, const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto parts = split(table, cfg.ratio, seed);
  SeedResult r;
  r.seed = seed;
  r.train_size = parts.train.size();
  r.test_size = parts.test.size();
  const std::size_t cls_col = table.column(cfg.class_variable);

  std::vector<int> predicted, actual;
  if (cfg.model_kind == ModelKind::NaiveBayes) {
    const auto model = nb_fit(parts.train, cfg.class_variable, cfg.pseudo);
    for (std::size_t i = 0; i < parts.test.size(); ++i) {
      predicted.push_back(nb_predict(model, parts.test.assignment(i, cfg.class_variable)).state);
      actual.push_back(parts.test.rows()[i][cls_col]);
    }
  } else {
    const Dag dag =
        cfg.model_kind == ModelKind::BnPaper ? heart::reference_network() : experiment_structure(cfg, parts.train);
    const auto net = cfg.estimator == Estimator::Mle ? learn::fit_mle(dag, parts.train)
                                                     : learn::fit_bayesian(dag, parts.train, cfg.ess);
    for (std::size_t i = 0; i < parts.test.size(); ++i) {
      Assignment evidence;
      for (const auto& [name, state] : parts.test.assignment(i, cfg.class_variable))
        if (net.dag().contains(name)) evidence[name] = state;
      predicted.push_back(detail::classify_row(net, cfg.class_variable, evidence, r.zero_evidence_rows).state);
      actual.push_back(parts.test.rows()[i][cls_col]);
    }
  }
  r.confusion = confusion(predicted, actual);
  r.metrics = metrics(r.confusion);
  return r;
}

/// Repeated-split experiment; seeds run concurrently and the report is
/// assembled in ascending seed order.
inline ExperimentReport run_experiment(const DataTable& table, const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw Error(ErrorKind::InvalidArgument, "no seeds given");
  if (table.schema().at(table.column(cfg.class_variable)).cardinality() != 2)
    throw Error(ErrorKind::InvalidArgument, "class variable must be binary");

  auto seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<std::future<SeedResult>> jobs;
  for (auto seed : seeds)
    jobs.push_back(std::async(std::launch::async, [&table, &cfg, seed] { return run_seed(table, cfg, seed); }));

  ExperimentReport report;
  report.config = cfg;
  report.config.seeds = seeds;
  for (auto& job : jobs) report.per_seed.push_back(job.get());

  std::vector<double> acc, prec, rec, f1;
  for (const auto& r : report.per_seed) {
    acc.push_back(r.metrics.accuracy);
    prec.push_back(r.metrics.precision);
    rec.push_back(r.metrics.recall);
    f1.push_back(r.metrics.f1);
  }
  report.accuracy = detail::summarize(acc);
  report.precision = detail::summarize(prec);
  report.recall = detail::summarize(rec);
  report.f1 = detail::summarize(f1);
  return report;
}

inline nlohmann::json to_json(const ExperimentReport& report) {
  using nlohmann::json;
  const auto& cfg = report.config;
  json doc;
  doc["model_kind"] = to_string(cfg.model_kind);
  if (cfg.model_kind == ModelKind::BnLearned) {
    doc["learner"] = to_string(cfg.learner);
    doc["score"] = cfg.score.name();
  }
  if (cfg.model_kind != ModelKind::NaiveBayes) {
    doc["estimator"] = to_string(cfg.estimator);
    if (cfg.estimator == Estimator::Bayes || cfg.score.type == learn::ScoreKind::Type::Bdeu) doc["ess"] = cfg.ess;
  } else {
    doc["pseudo"] = cfg.pseudo;
  }
  doc["class_variable"] = cfg.class_variable;
  doc["ratio"] = cfg.ratio;
  json seeds = json::array();
  for (const auto& r : report.per_seed) {
    json s;
    s["seed"] = r.seed;
    s["train_size"] = r.train_size;
    s["test_size"] = r.test_size;
    s["confusion"] = {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}, {"tn", r.confusion.tn}};
    s["metrics"] = {{"accuracy", r.metrics.accuracy},
                    {"precision", r.metrics.precision},
                    {"recall", r.metrics.recall},
                    {"f1", r.metrics.f1}};
    json undefined = json::array();
    if (!r.metrics.precision_defined) undefined.push_back("precision");
    if (!r.metrics.recall_defined) undefined.push_back("recall");
    if (!r.metrics.f1_defined) undefined.push_back("f1");
    s["undefined_metrics"] = undefined;
    s["zero_evidence_rows"] = r.zero_evidence_rows;
    seeds.push_back(std::move(s));
  }
  doc["per_seed"] = std::move(seeds);
  auto summary = [](const Summary& s) { return json{{"mean", s.mean}, {"stddev", s.stddev}}; };
  doc["aggregate"] = {{"accuracy", summary(report.accuracy)},
                      {"precision", summary(report.precision)},
                      {"recall", summary(report.recall)},
                      {"f1", summary(report.f1)}};
  return doc;
}

}  // namespace catbn::eval
