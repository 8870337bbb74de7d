#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "glv/engine.hpp"
#include "glv/metrics.hpp"
#include "glv/numeric.hpp"
#include "glv/types.hpp"

namespace glv {

// Profit-ratio sweeps and (rho, v) grid experiments, where v is the sd of
// the per-agent consumption-rate distribution relative to its mean.

struct SweepSpec {
  ModelPreset base;                 // consumption becomes FixedPerAgent when v is swept
  std::vector<double> rho_values;
  std::vector<double> v_values;     // empty: keep the base consumption spread
  int replicates = 5;
  int n_threads = 0;                // 0: default worker count

  void validate() const {
    base.params.validate();
    if (rho_values.empty()) throw ConfigError("sweep needs at least one rho value");
    for (double rho : rho_values) {
      if (rho < 0.0 || rho > 1.0) throw ConfigError("sweep rho values must lie in [0, 1]");
    }
    for (double v : v_values) {
      if (!(v > 0.0) || v > 0.25) {
        throw ConfigError("sweep v values must lie in (0, 0.25]");
      }
    }
    if (replicates < 1) throw ConfigError("sweep needs at least one replicate");
  }
};

struct SweepRow {
  double rho = 0.0;
  double v = 0.0;
  int seed_count = 0;
  double gini_wealth = 0.0;
  double gini_income = 0.0;
  double decile_wealth = 0.0;
  double decile_income = 0.0;
  double poverty_wealth = 0.0;
  double poverty_income = 0.0;
  std::optional<double> alpha_wealth;  // present only when the tail is well defined
  bool alpha_defined = false;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // ordered by (rho, v)
};

// The power tail is well defined away from the degenerate ends of the sweep:
// it needs a capital channel (rho > 0) and must not have condensed onto a
// single agent (largest holding below 5% of total wealth). Condensed and
// all-labour cells report no alpha.
inline std::optional<double> checked_tail_alpha(std::span<const double> wealth, double rho,
                                                std::int64_t n_tail) {
  if (!(rho > 0.0)) return std::nullopt;
  double sum = 0.0, max_w = 0.0;
  std::int64_t positives = 0;
  for (double w : wealth) {
    if (w > 0.0) {
      ++positives;
      sum += w;
      if (w > max_w) max_w = w;
    }
  }
  if (positives < n_tail || !(sum > 0.0)) return std::nullopt;
  if (max_w > 0.05 * sum) return std::nullopt;
  try {
    return hill_alpha(wealth, n_tail);
  } catch (const DegenerateTail&) {
    return std::nullopt;
  }
}

// Cell parameters: the base preset with the profit ratio replaced and, when
// v is swept, a FixedPerAgent consumption trait with sd = v * mean. The
// all-capital cell rho = 1 carries the profit pool of the rho = 0.9 cell as
// its explicit income.
inline EconParams make_cell_params(const ModelPreset& base, double rho,
                                   std::optional<double> v, std::uint64_t seed) {
  EconParams params = base.params;
  params.profit_ratio = rho;
  params.seed = seed;
  if (v) {
    params.consumption_spec =
        ConsumptionSpec::fixed_per_agent(base.params.consumption_spec.omega,
                                         *v * base.params.consumption_spec.omega);
  }
  if (rho >= 1.0) {
    params.explicit_total_income =
        9.0 * params.wage_spec.mean * static_cast<double>(params.n_agents);
  }
  return params;
}

// Runs the engine for every (rho, v) cell and aggregates the inequality
// metrics as means over the replicate seeds. Cells execute on a worker pool
// and are merged by cell index, so the output never depends on scheduling.
inline SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::optional<double>> v_axis;
  if (spec.v_values.empty()) {
    v_axis.push_back(std::nullopt);
  } else {
    for (double v : spec.v_values) v_axis.push_back(v);
  }

  struct Cell {
    double rho;
    std::optional<double> v;
  };
  std::vector<Cell> cells;
  for (double rho : spec.rho_values) {
    for (const auto& v : v_axis) cells.push_back({rho, v});
  }

  SweepTable table;
  table.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto run_cell = [&](std::size_t index) {
    const Cell& cell = cells[index];
    SweepRow row;
    row.rho = cell.rho;
    row.v = cell.v ? *cell.v
                   : spec.base.params.consumption_spec.absolute_sd() /
                         spec.base.params.consumption_spec.omega;
    row.seed_count = spec.replicates;
    double alpha_sum = 0.0;
    bool alpha_all_defined = true;
    const std::int64_t n_tail = default_n_tail(static_cast<std::size_t>(spec.base.params.n_agents));
    for (int rep = 0; rep < spec.replicates; ++rep) {
      const EconParams params = make_cell_params(
          spec.base, cell.rho, cell.v, spec.base.params.seed + static_cast<std::uint64_t>(rep));
      const RunResult result = run(params, /*n_threads=*/1);
      row.gini_wealth += gini(result.final_wealth);
      row.gini_income += gini(result.final_income);
      row.decile_wealth += decile_ratio(result.final_wealth);
      row.decile_income += decile_ratio(result.final_income);
      row.poverty_wealth += poverty_ratio(result.final_wealth);
      row.poverty_income += poverty_ratio(result.final_income);
      const auto alpha = checked_tail_alpha(result.final_wealth, cell.rho, n_tail);
      if (alpha) {
        alpha_sum += *alpha;
      } else {
        alpha_all_defined = false;
      }
    }
    const double k = spec.replicates;
    row.gini_wealth /= k;
    row.gini_income /= k;
    row.decile_wealth /= k;
    row.decile_income /= k;
    row.poverty_wealth /= k;
    row.poverty_income /= k;
    row.alpha_defined = alpha_all_defined;
    if (alpha_all_defined) row.alpha_wealth = alpha_sum / k;
    table.rows[index] = row;
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= cells.size() || failed.load()) return;
      try {
        run_cell(index);
      } catch (...) {
        failed.store(true);
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) {
          try {
            std::throw_with_nested(
                ConfigError("sweep cell rho=" + std::to_string(cells[index].rho) +
                            " v=" + std::to_string(table.rows[index].v) + " failed"));
          } catch (...) {
            first_error = std::current_exception();
          }
        }
        return;
      }
    }
  };

  const int requested = spec.n_threads > 0 ? spec.n_threads : default_thread_count();
  const int n_workers =
      std::max(1, std::min<int>(requested, static_cast<int>(cells.size())));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(n_workers) - 1);
  for (int t = 1; t < n_workers; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return table;
}

// ---------------------------------------------------------------------------
// Empirical alpha law  alpha = c (1 - rho) / v^p
// ---------------------------------------------------------------------------

struct AlphaLaw {
  double c = 0.0;
  double p = 0.0;
  double r2_linear = 0.0;  // R^2 of alpha vs rho at the base consumption spread
  int n_points = 0;
};

// Least squares on the log-transformed law over the well-defined middle
// region rho in [0.1, 0.6]; the linear R^2 is evaluated at the v value
// closest to 0.10.
inline AlphaLaw fit_alpha_law(const SweepTable& table) {
  constexpr double kRhoLo = 0.1 - 1e-9;
  constexpr double kRhoHi = 0.6 + 1e-9;
  std::vector<double> rho, v, alpha;
  for (const SweepRow& row : table.rows) {
    if (!row.alpha_defined || !row.alpha_wealth) continue;
    if (row.rho < kRhoLo || row.rho > kRhoHi) continue;
    rho.push_back(row.rho);
    v.push_back(row.v);
    alpha.push_back(*row.alpha_wealth);
  }
  std::vector<double> distinct_rho = rho, distinct_v = v;
  auto uniquify = [](std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
                 values.end());
  };
  uniquify(distinct_rho);
  uniquify(distinct_v);
  if (distinct_rho.size() < 5 || distinct_v.size() < 3) {
    throw InsufficientGrid("alpha law fit needs at least 5 rho and 3 v values in [0.1, 0.6]");
  }

  // ln(alpha) - ln(1 - rho) = ln(c) - p ln(v)
  std::vector<double> x, y;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    x.push_back(std::log(v[k]));
    y.push_back(std::log(alpha[k]) - std::log(1.0 - rho[k]));
  }
  const LinearFit law = linear_fit(x, y);

  AlphaLaw out;
  out.c = std::exp(law.intercept);
  out.p = -law.slope;
  out.n_points = static_cast<int>(alpha.size());

  double v_star = distinct_v.front();
  for (double candidate : distinct_v) {
    if (std::fabs(candidate - 0.1) < std::fabs(v_star - 0.1)) v_star = candidate;
  }
  std::vector<double> rho_at_v, alpha_at_v;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (std::fabs(v[k] - v_star) < 1e-12) {
      rho_at_v.push_back(rho[k]);
      alpha_at_v.push_back(alpha[k]);
    }
  }
  out.r2_linear = rho_at_v.size() >= 2 ? linear_fit(rho_at_v, alpha_at_v).r_squared : 0.0;
  return out;
}

}  // namespace glv
