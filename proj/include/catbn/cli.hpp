#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
// model error; failures print one diagnostic line on the error stream.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catbn/cleveland.hpp"
#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/evaluation.hpp"
#include "catbn/graph_queries.hpp"
#include "catbn/heart_network.hpp"
#include "catbn/inference.hpp"
#include "catbn/learn/constraint.hpp"
#include "catbn/learn/hill_climb.hpp"
#include "catbn/learn/hybrid.hpp"
#include "catbn/learn/parameters.hpp"
#include "catbn/model_io.hpp"
#include "catbn/naive_bayes.hpp"

namespace catbn::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Hyperparameters shared by learn and evaluate.
struct LearnOptions {
  std::string method = "paper";
  std::string score = "bic";
  double ess = 10.0;
  double alpha = 0.05;
  std::string estimator = "mle";
  double pseudo = 1.0;
  int max_iter = 1000;
  int max_sepset = -1;
  std::string class_variable = heart::kClassVariable;
};

inline learn::ScoreKind score_kind(const LearnOptions& o) {
  return o.score == "bdeu" ? learn::ScoreKind::bdeu(o.ess) : learn::ScoreKind::bic();
}

inline void add_learn_options(CLI::App* cmd, LearnOptions& o) {
  cmd->add_option("--method", o.method, "paper | hc | pc | hybrid | nb")
      ->check(CLI::IsMember({"paper", "hc", "pc", "hybrid", "nb"}))
      ->required();
  cmd->add_option("--score", o.score, "structure score: bic | bdeu")->check(CLI::IsMember({"bic", "bdeu"}));
  cmd->add_option("--ess", o.ess, "equivalent sample size (BDeu, Bayesian estimator)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", o.alpha, "CI-test significance level")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--estimator", o.estimator, "parameter estimator: mle | bayes")
      ->check(CLI::IsMember({"mle", "bayes"}));
  cmd->add_option("--pseudo", o.pseudo, "naive Bayes pseudo-count")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-iter", o.max_iter, "hill-climbing move limit")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-sepset", o.max_sepset, "largest conditioning set (pc, hybrid; -1 = no limit)");
  cmd->add_option("--class", o.class_variable, "class variable");
}

inline CLI::Validator writable_path() {
  return CLI::Validator(
      [](std::string& path) -> std::string {
        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty() && !std::filesystem::is_directory(parent))
          return "directory '" + parent.string() + "' does not exist";
        return {};
      },
      "PATH");
}

/// "a=1,b=label" -> assignment, resolving labels against the network.
inline Assignment parse_evidence(const DiscreteBayesNet& net, const std::string& text) {
  Assignment a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw UsageError("evidence item '" + item + "' is not of the form name=state");
    const auto name = item.substr(0, eq);
    if (!net.dag().contains(name)) throw Error(ErrorKind::InvalidAssignment, "unknown variable '" + name + "'");
    a[name] = net.variable(name).state_index(item.substr(eq + 1));
  }
  return a;
}

inline NameSet parse_names(const std::vector<std::string>& items) {
  NameSet out;
  for (const auto& item : items)
    if (!item.empty()) out.insert(item);
  return out;
}

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string to_dot(const Dag& dag) {
  std::ostringstream out;
  out << "digraph {\n";
  for (const auto& n : dag.nodes()) out << "  " << dot_quote(n) << " [label=" << dot_quote(n) << "];\n";
  for (const auto& [from, to] : dag.edges()) out << "  " << dot_quote(from) << " -> " << dot_quote(to) << ";\n";
  out << "}\n";
  return out.str();
}

/// Builds the model `learn` writes for the chosen method.
inline ModelDocument learn_model(const DataTable& data, const LearnOptions& o) {
  std::optional<std::string> cls;
  if (data.has_column(o.class_variable)) cls = o.class_variable;
  if (o.method == "nb") {
    if (!cls) throw Error(ErrorKind::SchemaMismatch, "data has no class column '" + o.class_variable + "'");
    return {nb_fit(data, *cls, o.pseudo).to_network(), cls};
  }
  Dag dag;
  if (o.method == "paper") {
    dag = heart::reference_network();
  } else if (o.method == "hc") {
    learn::HillClimbOptions hc;
    hc.score = score_kind(o);
    hc.max_iter = o.max_iter;
    dag = learn::hill_climb(data, hc).dag;
  } else if (o.method == "pc") {
    dag = learn::orient(learn::learn_skeleton(data, o.alpha, o.max_sepset)).dag;
  } else {
    dag = learn::hybrid_learn(data, o.alpha, score_kind(o), o.max_sepset, o.max_iter).dag;
  }
  auto net = o.estimator == "mle" ? learn::fit_mle(dag, data) : learn::fit_bayesian(dag, data, o.ess);
  return {std::move(net), cls};
}

inline eval::ExperimentConfig experiment_config(const LearnOptions& o, double ratio,
                                                const std::vector<std::uint64_t>& seeds) {
  eval::ExperimentConfig cfg;
  if (o.method == "paper") {
    cfg.model_kind = eval::ModelKind::BnPaper;
  } else if (o.method == "nb") {
    cfg.model_kind = eval::ModelKind::NaiveBayes;
  } else {
    cfg.model_kind = eval::ModelKind::BnLearned;
    cfg.learner = o.method == "hc" ? eval::Learner::HillClimb
                  : o.method == "pc" ? eval::Learner::Pc
                                     : eval::Learner::Hybrid;
  }
  cfg.ratio = ratio;
  cfg.seeds = seeds;
  cfg.estimator = o.estimator == "mle" ? eval::Estimator::Mle : eval::Estimator::Bayes;
  cfg.ess = o.ess;
  cfg.score = score_kind(o);
  cfg.alpha = o.alpha;
  cfg.pseudo = o.pseudo;
  cfg.class_variable = o.class_variable;
  return cfg;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Bayesian networks for categorical data", "catbn"};
  app.require_subcommand(1);

  std::string input, output, cutpoints, data_path, model_path, report_path, evidence, query;
  std::vector<std::string> xs, ys, given;
  double ratio = 0.8;
  std::vector<std::uint64_t> seeds{0};
  LearnOptions lo;

  auto* pre = app.add_subcommand("preprocess", "clean and discretize the raw Cleveland file");
  pre->add_option("--input", input, "raw comma-separated file")->required()->check(CLI::ExistingFile);
  pre->add_option("--output", output, "discretized CSV to write")->required()->check(writable_path());
  pre->add_option("--cutpoints", cutpoints, "JSON cutpoint document")->check(CLI::ExistingFile);

  auto* lrn = app.add_subcommand("learn", "learn structure and parameters, write a model file");
  lrn->add_option("--data", data_path, "discretized CSV")->required()->check(CLI::ExistingFile);
  lrn->add_option("--out", model_path, "model file to write")->required()->check(writable_path());
  add_learn_options(lrn, lo);

  auto* evl = app.add_subcommand("evaluate", "repeated-split evaluation, write a JSON report");
  evl->add_option("--data", data_path, "discretized CSV")->required()->check(CLI::ExistingFile);
  evl->add_option("--ratio", ratio, "training fraction")->check(CLI::Range(0.0, 1.0));
  evl->add_option("--seeds", seeds, "comma-separated split seeds")->delimiter(',');
  evl->add_option("--report", report_path, "report file to write")->required()->check(writable_path());
  add_learn_options(evl, lo);

  auto* prd = app.add_subcommand("predict", "posterior of the class variable given evidence");
  prd->add_option("--model", model_path, "model file")->required()->check(CLI::ExistingFile);
  prd->add_option("--evidence", evidence, "name=state,...");
  prd->add_option("--query", query, "variable to predict (default: the model's class variable)");

  auto* dsp = app.add_subcommand("dsep", "test d-separation in a model's graph");
  dsp->add_option("--model", model_path, "model file")->required()->check(CLI::ExistingFile);
  dsp->add_option("--x", xs, "first node set")->required()->delimiter(',');
  dsp->add_option("--y", ys, "second node set")->required()->delimiter(',');
  dsp->add_option("--given", given, "conditioning set")->delimiter(',');

  auto* dot = app.add_subcommand("export-dot", "write the model graph as DOT");
  dot->add_option("--model", model_path, "model file")->required()->check(CLI::ExistingFile);
  dot->add_option("--out", output, "DOT file to write")->required()->check(writable_path());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "catbn: " << e.what() << '\n';
    return 1;
  }

  try {
    if (pre->parsed()) {
      const auto cfg = cutpoints.empty() ? heart::CutpointConfig::defaults() : heart::load_cutpoints(cutpoints);
      const auto table = heart::discretize(heart::clean(heart::load_raw(input)), cfg);
      write_data_csv(table, output);
    } else if (lrn->parsed()) {
      const auto doc = learn_model(read_data_csv(data_path), lo);
      save_model(doc.network, model_path, doc.class_variable);
    } else if (evl->parsed()) {
      if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError("--ratio must lie strictly between 0 and 1");
      const auto report = eval::run_experiment(read_data_csv(data_path), experiment_config(lo, ratio, seeds));
      write_text(report_path, eval::to_json(report).dump(2) + "\n");
    } else if (prd->parsed()) {
      const auto doc = load_model(model_path);
      std::string target = query;
      if (target.empty()) target = doc.class_variable.value_or(heart::kClassVariable);
      if (!doc.network.dag().contains(target)) throw UsageError("model has no variable '" + target + "'");
      const auto result = classify(doc.network, target, parse_evidence(doc.network, evidence));
      const auto& var = doc.network.variable(target);
      out << target << " = " << var.states()[static_cast<std::size_t>(result.state)] << '\n';
      for (std::size_t s = 0; s < var.cardinality(); ++s)
        out << "P(" << target << "=" << var.states()[s] << ") = " << format_probability(result.posterior[s]) << '\n';
    } else if (dsp->parsed()) {
      const auto doc = load_model(model_path);
      const bool sep = d_separated(doc.network.dag(), parse_names(xs), parse_names(ys), parse_names(given));
      out << (sep ? "true" : "false") << '\n';
    } else if (dot->parsed()) {
      write_text(output, to_dot(load_model(model_path).network.dag()));
    }
  } catch (const UsageError& e) {
    err << "catbn: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "catbn: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "catbn: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace catbn::cli
