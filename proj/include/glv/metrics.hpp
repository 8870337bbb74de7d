#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "glv/numeric.hpp"
#include "glv/types.hpp"

namespace glv {

// Inequality and tail statistics over wealth/income vectors.

// Gini coefficient: mean absolute pairwise difference over twice the mean,
// via the sorted identity G = (2*sum(k*x_k) - (n+1)*sum(x)) / (n*sum(x)).
inline double gini(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw TooFewAgents("gini needs at least 2 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = pairwise_sum(sorted);
  if (!(total > 0.0)) throw AllZero();
  double weighted = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weighted += static_cast<double>(k + 1) * sorted[k];
  }
  const double dn = static_cast<double>(n);
  return (2.0 * weighted - (dn + 1.0) * total) / (dn * total);
}

// Mean of the top floor(n/10) values over the mean of the bottom floor(n/10).
// +Inf when the bottom decile sums to zero.
inline double decile_ratio(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 10) throw TooFewAgents("decile_ratio needs at least 10 values");
  const std::size_t k = n / 10;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double bottom = pairwise_sum(std::span<const double>(sorted).first(k));
  const double top = pairwise_sum(std::span<const double>(sorted).last(k));
  if (!(bottom > 0.0)) return std::numeric_limits<double>::infinity();
  return top / bottom;
}

// Fraction of values strictly below half the mean.
inline double poverty_ratio(std::span<const double> values) {
  if (values.empty()) throw EmptyInput();
  const double half_mean = 0.5 * mean(values);
  std::size_t count = 0;
  for (double v : values) {
    if (v < half_mean) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(values.size());
}

// Power-tail exponent from the top n_tail order statistics:
//   alpha = 1 + n / sum(ln(x_i / x_min)),  x_min = smallest tail value.
// Positive convention: this is the magnitude of the log-log CCDF slope.
inline double hill_alpha(std::span<const double> values, std::int64_t n_tail = 400) {
  if (n_tail < 2) throw TooFewAgents("hill_alpha needs n_tail >= 2");
  std::vector<double> positive;
  positive.reserve(values.size());
  for (double v : values) {
    if (v > 0.0) positive.push_back(v);
  }
  if (static_cast<std::int64_t>(positive.size()) < n_tail) {
    throw TooFewAgents("hill_alpha needs at least n_tail strictly positive values");
  }
  std::nth_element(positive.begin(), positive.end() - n_tail, positive.end());
  const std::span<const double> tail(positive.data() + (positive.size() - n_tail),
                                     static_cast<std::size_t>(n_tail));
  const double x_min = *std::min_element(tail.begin(), tail.end());
  double log_sum = 0.0;
  for (double v : tail) log_sum += std::log(v / x_min);
  if (!(log_sum > 0.0)) throw DegenerateTail();
  return 1.0 + static_cast<double>(n_tail) / log_sum;
}

// The tail fraction used throughout: 400 points at n = 10000, scaled as
// round(0.04 n) elsewhere.
inline std::int64_t default_n_tail(std::size_t n_values) {
  if (n_values == 10000) return 400;
  const auto scaled = static_cast<std::int64_t>(std::llround(0.04 * static_cast<double>(n_values)));
  return std::max<std::int64_t>(scaled, 2);
}

struct MetricsReport {
  double gini = 0.0;
  double decile_ratio = 0.0;
  double poverty_ratio = 0.0;
  std::optional<double> hill_alpha;  // absent when the tail is too small or degenerate
  std::int64_t n_tail = 0;
};

inline MetricsReport compute_metrics(std::span<const double> values,
                                     std::optional<std::int64_t> n_tail_override = {}) {
  MetricsReport report;
  report.gini = gini(values);
  report.decile_ratio = decile_ratio(values);
  report.poverty_ratio = poverty_ratio(values);
  report.n_tail = n_tail_override.value_or(default_n_tail(values.size()));
  // tails of fewer than 10 points give no meaningful exponent estimate
  if (report.n_tail >= 10) {
    try {
      report.hill_alpha = hill_alpha(values, report.n_tail);
    } catch (const TooFewAgents&) {
    } catch (const DegenerateTail&) {
    }
  }
  return report;
}

}  // namespace glv
