#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "catbn/network.hpp"

namespace catbn {

/// Non-negative potential over an ordered scope of network variables
/// (indices into the owning network). Values are row-major with the last
/// scope variable varying fastest.
struct Factor {
  std::vector<int> scope;
  std::vector<std::size_t> cards;
  std::vector<double> values;

  bool contains(int var) const { return std::find(scope.begin(), scope.end(), var) != scope.end(); }

  /// Strides per scope position for the last-fastest layout.
  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(scope.size(), 1);
    for (std::size_t k = scope.size(); k-- > 1;) s[k - 1] = s[k] * cards[k];
    return s;
  }
};

/// CPT of node i as a factor over (parents..., node).
inline Factor cpt_factor(const DiscreteBayesNet& net, int i) {
  Factor f;
  for (int p : net.dag().parents(i)) {
    f.scope.push_back(p);
    f.cards.push_back(net.variable(p).cardinality());
  }
  f.scope.push_back(i);
  f.cards.push_back(net.variable(i).cardinality());
  f.values = net.cpt(i).table();
  return f;
}

/// Slices the factor at var = state, dropping var from the scope.
inline Factor reduce(const Factor& f, int var, int state) {
  auto it = std::find(f.scope.begin(), f.scope.end(), var);
  if (it == f.scope.end()) return f;
  const std::size_t pos = static_cast<std::size_t>(it - f.scope.begin());
  const auto strides = f.strides();
  Factor out;
  for (std::size_t k = 0; k < f.scope.size(); ++k) {
    if (k == pos) continue;
    out.scope.push_back(f.scope[k]);
    out.cards.push_back(f.cards[k]);
  }
  const std::size_t inner = strides[pos];
  const std::size_t outer = f.values.size() / (inner * f.cards[pos]);
  out.values.reserve(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * inner * f.cards[pos] + static_cast<std::size_t>(state) * inner;
    for (std::size_t in = 0; in < inner; ++in) out.values.push_back(f.values[base + in]);
  }
  return out;
}

/// Sums var out of the factor.
inline Factor marginalize(const Factor& f, int var) {
  auto it = std::find(f.scope.begin(), f.scope.end(), var);
  if (it == f.scope.end()) return f;
  const std::size_t pos = static_cast<std::size_t>(it - f.scope.begin());
  const auto strides = f.strides();
  Factor out;
  for (std::size_t k = 0; k < f.scope.size(); ++k) {
    if (k == pos) continue;
    out.scope.push_back(f.scope[k]);
    out.cards.push_back(f.cards[k]);
  }
  const std::size_t inner = strides[pos];
  const std::size_t r = f.cards[pos];
  const std::size_t outer = f.values.size() / (inner * r);
  out.values.assign(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t in = 0; in < inner; ++in)
        out.values[o * inner + in] += f.values[(o * r + s) * inner + in];
  return out;
}

/// Pointwise product; the result scope is a's scope followed by b's new variables.
inline Factor multiply(const Factor& a, const Factor& b) {
  Factor out{a.scope, a.cards, {}};
  for (std::size_t k = 0; k < b.scope.size(); ++k) {
    if (!a.contains(b.scope[k])) {
      out.scope.push_back(b.scope[k]);
      out.cards.push_back(b.cards[k]);
    }
  }
  std::size_t total = 1;
  for (auto c : out.cards) total *= c;

  // stride of each output position inside a and b (0 when absent)
  const auto sa = a.strides();
  const auto sb = b.strides();
  std::vector<std::size_t> step_a(out.scope.size(), 0), step_b(out.scope.size(), 0);
  for (std::size_t k = 0; k < out.scope.size(); ++k) {
    for (std::size_t j = 0; j < a.scope.size(); ++j)
      if (a.scope[j] == out.scope[k]) step_a[k] = sa[j];
    for (std::size_t j = 0; j < b.scope.size(); ++j)
      if (b.scope[j] == out.scope[k]) step_b[k] = sb[j];
  }

  out.values.resize(total);
  std::vector<std::size_t> counter(out.scope.size(), 0);
  std::size_t ia = 0, ib = 0;
  for (std::size_t n = 0; n < total; ++n) {
    out.values[n] = a.values[ia] * b.values[ib];
    for (std::size_t k = out.scope.size(); k-- > 0;) {
      if (++counter[k] < out.cards[k]) {
        ia += step_a[k];
        ib += step_b[k];
        break;
      }
      ia -= step_a[k] * (out.cards[k] - 1);
      ib -= step_b[k] * (out.cards[k] - 1);
      counter[k] = 0;
    }
  }
  return out;
}

}  // namespace catbn
