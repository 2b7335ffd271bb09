#pragma once

// Ingestion and preprocessing of the UCI processed Cleveland heart-disease
// file: missing-row deletion, target binarization, categorical recoding and
// cutpoint discretization of the five continuous attributes.

#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catbn/data_table.hpp"
#include "catbn/error.hpp"
#include "catbn/heart_network.hpp"

namespace catbn::heart {

inline constexpr std::size_t kRawColumns = 14;
inline constexpr const char* kMissing = "?";

/// Attribute names in file order.
inline const std::array<std::string, kRawColumns>& raw_columns() {
  static const std::array<std::string, kRawColumns> cols = {
      "age", "sex", "cp", "trestbps", "chol", "fbs", "restecg",
      "thalach", "exang", "oldpeak", "slope", "ca", "thal", "target"};
  return cols;
}

enum Column : std::size_t {
  kAge, kSex, kCp, kTrestbps, kChol, kFbs, kRestecg,
  kThalach, kExang, kOldpeak, kSlope, kCa, kThal, kTarget
};

inline bool is_continuous(std::size_t col) {
  return col == kAge || col == kTrestbps || col == kChol || col == kThalach || col == kOldpeak;
}

struct RawRow {
  std::size_t line;  // 1-based line number in the source file
  std::array<std::string, kRawColumns> fields;
};

/// Unparsed records; "?" marks a missing cell.
struct RawTable {
  std::vector<RawRow> rows;
};

inline RawTable parse_raw(std::istream& in, const std::string& source = "<input>") {
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) fields.push_back(cell);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != kRawColumns)
      throw Error(ErrorKind::MalformedRow, source + ":" + std::to_string(line_no) + ": expected 14 fields, got " +
                                               std::to_string(fields.size()));
    RawRow row{line_no, {}};
    for (std::size_t c = 0; c < kRawColumns; ++c) {
      auto& f = fields[c];
      const auto b = f.find_first_not_of(" \t");
      const auto e = f.find_last_not_of(" \t");
      row.fields[c] = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline RawTable load_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  return parse_raw(in, path);
}

/// Cleaned records: categorical columns hold 0-based state indices, the five
/// continuous columns still hold their measured values.
struct ClinicalTable {
  std::vector<std::array<double, kRawColumns>> rows;
};

namespace detail {

inline double parse_number(const RawRow& row, std::size_t col) {
  const auto& text = row.fields[col];
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size() || !std::isfinite(v))
    throw Error(ErrorKind::MalformedRow, "line " + std::to_string(row.line) + ": " + raw_columns()[col] +
                                             " value '" + text + "' is not a number");
  return v;
}

/// Maps a raw categorical code onto its 0-based index.
inline int recode(const RawRow& row, std::size_t col) {
  const double v = parse_number(row, col);
  const double rounded = std::round(v);
  auto unknown = [&] {
    return Error(ErrorKind::UnknownCategory, "line " + std::to_string(row.line) + ": " + raw_columns()[col] +
                                                 " code '" + row.fields[col] + "' is outside its domain");
  };
  if (rounded != v) throw unknown();
  const int code = static_cast<int>(rounded);
  switch (col) {
    case kSex:
    case kFbs:
    case kExang:
      if (code == 0 || code == 1) return code;
      break;
    case kRestecg:
      if (code >= 0 && code <= 2) return code;
      break;
    case kCa:
      if (code >= 0 && code <= 3) return code;
      break;
    case kCp:
      if (code >= 1 && code <= 4) return code - 1;
      break;
    case kSlope:
      if (code >= 1 && code <= 3) return code - 1;
      break;
    case kThal:
      if (code == 3) return 0;
      if (code == 6) return 1;
      if (code == 7) return 2;
      break;
    case kTarget:
      if (code == 0) return 0;
      if (code >= 1 && code <= 4) return 1;
      break;
    default:
      break;
  }
  throw unknown();
}

}  // namespace detail

/// Drops rows with a missing cell, binarizes the target (1..4 -> 1) and
/// recodes categorical attributes to contiguous indices in ascending code order.
inline ClinicalTable clean(const RawTable& raw) {
  ClinicalTable out;
  for (const auto& row : raw.rows) {
    bool missing = false;
    for (const auto& f : row.fields) missing = missing || f == kMissing;
    if (missing) continue;
    std::array<double, kRawColumns> values{};
    for (std::size_t c = 0; c < kRawColumns; ++c)
      values[c] = is_continuous(c) ? detail::parse_number(row, c) : detail::recode(row, c);
    out.rows.push_back(values);
  }
  return out;
}

enum class BinBasis {
  Raw,
  AgePredictedMax,  // value - (220 - age)
};

struct AttributeCutpoints {
  std::vector<double> thresholds;
  BinBasis basis = BinBasis::Raw;

  /// First bin i with value <= thresholds[i]; the last bin otherwise.
  int bin(double value) const {
    for (std::size_t i = 0; i < thresholds.size(); ++i)
      if (value <= thresholds[i]) return static_cast<int>(i);
    return static_cast<int>(thresholds.size());
  }
};

/// Thresholds for age, trestbps, chol, thalach and oldpeak.
struct CutpointConfig {
  std::map<std::string, AttributeCutpoints> attributes;

  /// Calibrated so the discretized families reproduce the published CPTs on
  /// the 297 complete records. thalach is binned on its deficit from the
  /// age-predicted maximum heart rate.
  static CutpointConfig defaults() {
    CutpointConfig cfg;
    cfg.attributes["age"] = {{45.0, 64.0}, BinBasis::Raw};
    cfg.attributes["trestbps"] = {{120.0, 140.0}, BinBasis::Raw};
    cfg.attributes["chol"] = {{200.0, 240.0}, BinBasis::Raw};
    cfg.attributes["thalach"] = {{-20.0}, BinBasis::AgePredictedMax};
    cfg.attributes["oldpeak"] = {{2.0}, BinBasis::Raw};
    return cfg;
  }

  static const std::map<std::string, std::size_t>& required_bins() {
    static const std::map<std::string, std::size_t> bins = {
        {"age", 3}, {"trestbps", 3}, {"chol", 3}, {"thalach", 2}, {"oldpeak", 2}};
    return bins;
  }

  void validate() const {
    for (const auto& [name, bins] : required_bins()) {
      auto it = attributes.find(name);
      if (it == attributes.end())
        throw Error(ErrorKind::InvalidArgument, "cutpoints missing for '" + name + "'");
      const auto& th = it->second.thresholds;
      if (th.size() + 1 != bins)
        throw Error(ErrorKind::InvalidArgument, "'" + name + "' needs " + std::to_string(bins - 1) +
                                                    " thresholds, got " + std::to_string(th.size()));
      for (std::size_t i = 1; i < th.size(); ++i)
        if (!(th[i] > th[i - 1]))
          throw Error(ErrorKind::NonMonotoneCutpoints, "thresholds of '" + name + "' are not strictly increasing");
    }
    for (const auto& [name, _] : attributes)
      if (!required_bins().count(name))
        throw Error(ErrorKind::InvalidArgument, "'" + name + "' is not a continuous attribute");
  }
};

inline nlohmann::json to_json(const CutpointConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, cut] : cfg.attributes) {
    if (cut.basis == BinBasis::Raw)
      j[name] = cut.thresholds;
    else
      j[name] = {{"thresholds", cut.thresholds}, {"relative_to", "age_predicted_max"}};
  }
  return j;
}

/// Accepts {attribute: [thresholds]} or
/// {attribute: {"thresholds": [...], "relative_to": "age_predicted_max"}}.
inline CutpointConfig cutpoints_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "cutpoint document must be an object");
  CutpointConfig cfg;
  try {
    for (const auto& [name, value] : j.items()) {
      AttributeCutpoints cut;
      if (value.is_array()) {
        cut.thresholds = value.get<std::vector<double>>();
      } else if (value.is_object()) {
        cut.thresholds = value.at("thresholds").get<std::vector<double>>();
        const auto basis = value.value("relative_to", std::string("raw"));
        if (basis == "age_predicted_max")
          cut.basis = BinBasis::AgePredictedMax;
        else if (basis != "raw")
          throw Error(ErrorKind::InvalidArgument, "unknown relative_to '" + basis + "'");
      } else {
        throw Error(ErrorKind::InvalidArgument, "cutpoints for '" + name + "' must be a list or object");
      }
      cfg.attributes[name] = std::move(cut);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("bad cutpoint document: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline CutpointConfig load_cutpoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, path + ": " + e.what());
  }
  return cutpoints_from_json(j);
}

/// Output column names in file order; continuous attributes gain a "C" suffix.
inline std::vector<std::string> discretized_columns() {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < kRawColumns; ++c) names.push_back(raw_columns()[c] + (is_continuous(c) ? "C" : ""));
  return names;
}

inline DataTable discretize(const ClinicalTable& table, const CutpointConfig& cfg) {
  cfg.validate();
  std::map<std::string, std::size_t> cards(schema().begin(), schema().end());
  std::vector<Variable> vars;
  for (const auto& name : discretized_columns()) vars.push_back(Variable::indexed(name, cards.at(name)));

  std::vector<std::vector<int>> rows;
  rows.reserve(table.rows.size());
  for (const auto& rec : table.rows) {
    std::vector<int> row(kRawColumns);
    for (std::size_t c = 0; c < kRawColumns; ++c) {
      if (!is_continuous(c)) {
        row[c] = static_cast<int>(rec[c]);
        continue;
      }
      const auto& cut = cfg.attributes.at(raw_columns()[c]);
      double v = rec[c];
      if (cut.basis == BinBasis::AgePredictedMax) v -= 220.0 - rec[kAge];
      row[c] = cut.bin(v);
    }
    rows.push_back(std::move(row));
  }
  return DataTable(std::move(vars), std::move(rows));
}

}  // namespace catbn::heart
