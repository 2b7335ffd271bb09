#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catbn/error.hpp"
#include "catbn/network.hpp"
#include "catbn/variable.hpp"

namespace catbn {

/// Fully categorical data: one row of state indices per record.
class DataTable {
 public:
  DataTable() = default;

  DataTable(std::vector<Variable> schema, std::vector<std::vector<int>> rows)
      : schema_(std::move(schema)), rows_(std::move(rows)) {
    for (std::size_t i = 0; i < schema_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (schema_[i].name() == schema_[j].name())
          throw Error(ErrorKind::DuplicateName, "column '" + schema_[i].name() + "' appears twice");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].size() != schema_.size())
        throw Error(ErrorKind::SchemaMismatch, "row " + std::to_string(r) + " has " +
                                                   std::to_string(rows_[r].size()) + " values, expected " +
                                                   std::to_string(schema_.size()));
      for (std::size_t c = 0; c < schema_.size(); ++c) {
        const int v = rows_[r][c];
        if (v < 0 || static_cast<std::size_t>(v) >= schema_[c].cardinality())
          throw Error(ErrorKind::SchemaMismatch, "row " + std::to_string(r) + " column '" +
                                                     schema_[c].name() + "' holds out-of-range state " +
                                                     std::to_string(v));
      }
    }
  }

  const std::vector<Variable>& schema() const noexcept { return schema_; }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t columns() const noexcept { return schema_.size(); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& v : schema_) out.push_back(v.name());
    return out;
  }

  bool has_column(const std::string& name) const {
    for (const auto& v : schema_)
      if (v.name() == name) return true;
    return false;
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < schema_.size(); ++i)
      if (schema_[i].name() == name) return i;
    throw Error(ErrorKind::SchemaMismatch, "data has no column '" + name + "'");
  }

  DataTable subset(const std::vector<std::size_t>& row_indices) const {
    std::vector<std::vector<int>> rows;
    rows.reserve(row_indices.size());
    for (auto r : row_indices) rows.push_back(rows_.at(r));
    return DataTable(schema_, std::move(rows));
  }

  /// Row r as an assignment over every column except `skip`.
  Assignment assignment(std::size_t r, const std::string& skip = {}) const {
    Assignment a;
    for (std::size_t c = 0; c < schema_.size(); ++c)
      if (schema_[c].name() != skip) a[schema_[c].name()] = rows_[r][c];
    return a;
  }

 private:
  std::vector<Variable> schema_;
  std::vector<std::vector<int>> rows_;
};

/// Comma-separated, header row of column names, one state index per cell.
inline void write_data_csv(const DataTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  const auto names = table.names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

/// Reads a table written by write_data_csv. Each column gets states
/// "0".."k-1" where k is one past the largest observed index (at least 2).
inline DataTable read_data_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  auto split_line = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedRow, "'" + path + "' has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  std::vector<std::vector<int>> rows;
  std::vector<int> max_state(header.size(), 1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size())
      throw Error(ErrorKind::MalformedRow, path + ":" + std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(cells.size()));
    std::vector<int> row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::size_t pos = 0;
      int v = -1;
      try {
        v = std::stoi(cells[c], &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != cells[c].size() || v < 0)
        throw Error(ErrorKind::MalformedRow, path + ":" + std::to_string(line_no) + ": '" + cells[c] +
                                                 "' is not a state index");
      max_state[c] = std::max(max_state[c], v);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  std::vector<Variable> schema;
  for (std::size_t c = 0; c < header.size(); ++c)
    schema.push_back(Variable::indexed(header[c], static_cast<std::size_t>(max_state[c]) + 1));
  return DataTable(std::move(schema), std::move(rows));
}

/// Fisher-Yates permutation of 0..n-1 driven by a 64-bit Mersenne twister.
/// Uses rejection sampling so results do not depend on the standard
/// library's distribution implementations.
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw;
    do {
      draw = rng();
    } while (draw >= limit);
    std::swap(idx[i - 1], idx[draw % bound]);
  }
  return idx;
}

struct Split {
  DataTable train;
  DataTable test;
};

/// Shuffles rows by seed and carves off ceil(N * (1 - ratio)) test rows.
inline Split split(const DataTable& table, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw Error(ErrorKind::InvalidArgument, "split ratio must lie in (0, 1)");
  const std::size_t n = table.size();
  const auto test_size = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n) * (1.0 - ratio) - 1e-9));
  const auto perm = seeded_permutation(n, seed);
  std::vector<std::size_t> test(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(test_size));
  std::vector<std::size_t> train(perm.begin() + static_cast<std::ptrdiff_t>(test_size), perm.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return Split{table.subset(train), table.subset(test)};
}

}  // namespace catbn
