#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "psys/attribute_table.hpp"
#include "psys/error.hpp"

namespace psys {

namespace detail {

// 1-based ranks; tied values share the mean of the ranks they span.
template <typename T>
std::vector<double> average_ranks(std::span<const T> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && !(values[order[i]] < values[order[j + 1]])) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace detail

/// Spearman rank correlation with average ranks for ties. Values only need
/// `operator<`.
template <typename T>
double spearman(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "spearman: length mismatch");
  if (a.size() < 2) throw Error(ErrorCode::empty_input, "spearman needs at least two observations");
  auto ra = detail::average_ranks(a);
  auto rb = detail::average_ranks(b);
  auto constant = [](const std::vector<double>& r) { return std::all_of(r.begin(), r.end(), [&](double v) { return v == r.front(); }); };
  if (constant(ra) || constant(rb)) throw Error(ErrorCode::degenerate_attribute, "spearman: constant input");
  return detail::pearson(ra, rb);
}

/// Spearman correlation of two attributes, each taken in its oriented form.
inline double spearman(const AttributeTable& table, std::string_view a, std::string_view b) {
  const auto ia = table.attribute_index(a);
  const auto ib = table.attribute_index(b);
  if (table.size() < 2) throw Error(ErrorCode::empty_input, "spearman needs at least two elements");
  std::vector<Decimal> va, vb;
  for (std::size_t i = 0; i < table.size(); ++i) {
    va.push_back(table.oriented_value(i, ia));
    vb.push_back(table.oriented_value(i, ib));
  }
  auto is_constant = [](const std::vector<Decimal>& v) {
    return std::all_of(v.begin(), v.end(), [&](const Decimal& d) { return d == v.front(); });
  };
  if (is_constant(va)) throw Error(ErrorCode::degenerate_attribute, "attribute '" + std::string(a) + "' is constant");
  if (is_constant(vb)) throw Error(ErrorCode::degenerate_attribute, "attribute '" + std::string(b) + "' is constant");
  return spearman(std::span<const Decimal>(va), std::span<const Decimal>(vb));
}

}  // namespace psys
