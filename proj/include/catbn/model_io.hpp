#pragma once

// Versioned JSON model documents:
//   {"format_version": 1,
//    "class_variable": "target",            (optional)
//    "nodes": [{"name", "states": [...], "parents": [...], "cpt": [...]}]}
// CPT entries are flat, configuration-major with the last parent fastest,
// written as decimal strings with 17 significant digits so a save/load
// round trip reproduces every double exactly.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catbn/error.hpp"
#include "catbn/network.hpp"

namespace catbn {

inline constexpr int kModelFormatVersion = 1;

struct ModelDocument {
  DiscreteBayesNet network;
  std::optional<std::string> class_variable;
};

inline std::string format_probability(double p) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}

inline double parse_probability(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw Error(ErrorKind::ModelFormat, "CPT entries must be decimal strings or numbers");
  const auto s = v.get<std::string>();
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw Error(ErrorKind::ModelFormat, "'" + s + "' is not a decimal number");
  return d;
}

inline nlohmann::json model_to_json(const DiscreteBayesNet& net, const std::optional<std::string>& class_variable = {}) {
  nlohmann::json doc;
  doc["format_version"] = kModelFormatVersion;
  if (class_variable) doc["class_variable"] = *class_variable;
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& cpt : net.cpts()) {
    nlohmann::json node;
    node["name"] = cpt.variable().name();
    node["states"] = cpt.variable().states();
    std::vector<std::string> parents;
    for (const auto& p : cpt.parents()) parents.push_back(p.name());
    node["parents"] = parents;
    std::vector<std::string> table;
    for (double p : cpt.table()) table.push_back(format_probability(p));
    node["cpt"] = table;
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

inline ModelDocument model_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || !doc.contains("format_version"))
      throw Error(ErrorKind::ModelFormat, "missing format_version");
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion)
      throw Error(ErrorKind::ModelFormat, "unsupported format_version " + std::to_string(version));

    std::vector<Variable> vars;
    std::vector<std::string> names;
    for (const auto& node : doc.at("nodes")) {
      vars.emplace_back(node.at("name").get<std::string>(), node.at("states").get<std::vector<std::string>>());
      names.push_back(vars.back().name());
    }
    auto find_var = [&](const std::string& name) -> const Variable& {
      for (const auto& v : vars)
        if (v.name() == name) return v;
      throw Error(ErrorKind::ModelFormat, "parent '" + name + "' is not a node");
    };

    std::vector<Edge> edges;
    std::vector<Cpt> cpts;
    std::size_t i = 0;
    for (const auto& node : doc.at("nodes")) {
      std::vector<Variable> parents;
      for (const auto& p : node.at("parents")) {
        parents.push_back(find_var(p.get<std::string>()));
        edges.emplace_back(parents.back().name(), names[i]);
      }
      std::vector<double> table;
      for (const auto& v : node.at("cpt")) table.push_back(parse_probability(v));
      cpts.emplace_back(vars[i], std::move(parents), std::move(table));
      ++i;
    }
    ModelDocument out{DiscreteBayesNet(Dag(names, edges), std::move(cpts)), std::nullopt};
    if (doc.contains("class_variable")) {
      auto cls = doc.at("class_variable").get<std::string>();
      if (!out.network.dag().contains(cls))
        throw Error(ErrorKind::ModelFormat, "class_variable '" + cls + "' is not a node");
      out.class_variable = std::move(cls);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ModelFormat, e.what());
  }
}

inline void save_model(const DiscreteBayesNet& net, const std::string& path,
                       const std::optional<std::string>& class_variable = {}) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << model_to_json(net, class_variable).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

inline ModelDocument load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ModelFormat, path + ": " + e.what());
  }
  return model_from_json(doc);
}

}  // namespace catbn
