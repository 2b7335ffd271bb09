#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "catbn/data_table.hpp"
#include "catbn/error.hpp"

namespace catbn::learn {

/// Sufficient statistics N(x, pa) of one family, laid out like a Cpt table
/// (configuration-major, last parent fastest).
struct CountTable {
  std::size_t variable = 0;             // column index
  std::vector<std::size_t> parents;     // column indices, declared order
  std::size_t cardinality = 0;          // r
  std::size_t configurations = 1;       // q
  std::vector<std::uint64_t> counts;    // q * r
  std::vector<std::uint64_t> totals;    // q

  std::uint64_t count(std::size_t config, std::size_t state) const { return counts[config * cardinality + state]; }

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (auto t : totals) n += t;
    return n;
  }
};

inline CountTable count_family(const DataTable& data, std::size_t variable, const std::vector<std::size_t>& parents) {
  CountTable t;
  t.variable = variable;
  t.parents = parents;
  t.cardinality = data.schema().at(variable).cardinality();
  for (auto p : parents) t.configurations *= data.schema().at(p).cardinality();
  t.counts.assign(t.configurations * t.cardinality, 0);
  t.totals.assign(t.configurations, 0);
  for (const auto& row : data.rows()) {
    std::size_t config = 0;
    for (auto p : parents) config = config * data.schema()[p].cardinality() + static_cast<std::size_t>(row[p]);
    ++t.counts[config * t.cardinality + static_cast<std::size_t>(row[variable])];
    ++t.totals[config];
  }
  return t;
}

inline CountTable count_family(const DataTable& data, const std::string& variable,
                               const std::vector<std::string>& parents) {
  std::vector<std::size_t> ps;
  for (const auto& p : parents) ps.push_back(data.column(p));
  return count_family(data, data.column(variable), ps);
}

}  // namespace catbn::learn
