#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "glv/numeric.hpp"
#include "glv/parallel.hpp"
#include "glv/policy.hpp"
#include "glv/rng.hpp"
#include "glv/types.hpp"

namespace glv {

// Executes the per-agent wealth difference equation
//   w' = w + e_i + pi_i - C_i
// with the profit pool Pi shared proportionally to current wealth
// (pi_i = Pi * w_i / sum(w)) and consumption C_i = Omega_{i,t} * w_i.

enum class ModelName { M1A, M1B, M1C, M1D };

struct ModelPreset {
  ModelName name = ModelName::M1C;
  EconParams params;
};

namespace engine_detail {

// Consumption draws and traits are floored at a 0.1% rate: a negative rate
// would mean hyper-saving and an unstable model, so a small positive floor is
// the minimal boundary condition.
inline constexpr double kConsumptionFloor = 0.001;
// Wage traits are floored at 1% of the mean so every agent keeps a strictly
// positive income stream even under extreme draws.
inline constexpr double kWageFloorFrac = 0.01;
// A step that would drive wealth nonpositive clamps to this fraction of the
// initial mean wealth; occurrences are counted in the aggregate series.
inline constexpr double kPositivityFloorFrac = 1e-6;

// TraitInit sub-streams: the iteration slot of the key distinguishes traits,
// keeping wage and consumption draws independent.
inline constexpr std::int64_t kTraitSlotWage = 0;
inline constexpr std::int64_t kTraitSlotOmega = 1;

}  // namespace engine_detail

inline ModelPreset make_preset(ModelName name, std::uint64_t seed,
                               std::int64_t n_agents = 10000,
                               std::int64_t n_iterations = 10000) {
  ModelPreset preset;
  preset.name = name;
  EconParams& p = preset.params;
  p.n_agents = n_agents;
  p.n_iterations = n_iterations;
  p.profit_ratio = 0.5;
  p.seed = seed;
  switch (name) {
    case ModelName::M1A:
      p.wage_spec = {100.0, 0.0};
      p.consumption_spec = ConsumptionSpec::stochastic_per_step(0.30, 1.0 / 3.0);
      break;
    case ModelName::M1B:
      p.wage_spec = {100.0, 25.0};
      p.consumption_spec = ConsumptionSpec::fixed_uniform(0.20);
      break;
    case ModelName::M1C:
      p.wage_spec = {100.0, 0.0};
      p.consumption_spec = ConsumptionSpec::fixed_per_agent(0.20, 0.02);
      break;
    case ModelName::M1D:
      p.wage_spec = {100.0, 10.0};
      p.consumption_spec = ConsumptionSpec::fixed_per_agent(0.20, 0.02);
      break;
  }
  return preset;
}

// Draw the fixed traits and start every agent at the equilibrium wealth
// mean income / mean consumption rate, which keeps transients short; the
// stationary distribution does not depend on this choice.
inline PopulationState initialize(const EconParams& params,
                                  std::optional<double> initial_wealth = {}) {
  params.validate();
  PopulationState state;
  const auto n = static_cast<std::size_t>(params.n_agents);
  state.wages.resize(n);
  if (params.wage_spec.sd == 0.0) {
    std::fill(state.wages.begin(), state.wages.end(), params.wage_spec.mean);
  } else {
    const double lo = engine_detail::kWageFloorFrac * params.wage_spec.mean;
    for (std::size_t i = 0; i < n; ++i) {
      StreamKey key{params.seed, static_cast<std::int64_t>(i),
                    engine_detail::kTraitSlotWage, Channel::TraitInit};
      state.wages[i] = sample_truncated_normal(key, params.wage_spec.mean,
                                               params.wage_spec.sd, lo);
    }
  }
  if (params.consumption_spec.kind == ConsumptionKind::FixedPerAgent) {
    state.consumption_propensity.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      StreamKey key{params.seed, static_cast<std::int64_t>(i),
                    engine_detail::kTraitSlotOmega, Channel::TraitInit};
      state.consumption_propensity[i] =
          sample_truncated_normal(key, params.consumption_spec.omega,
                                  params.consumption_spec.spread,
                                  engine_detail::kConsumptionFloor);
    }
  }
  double w0;
  if (initial_wealth) {
    if (!(*initial_wealth > 0.0)) throw ConfigError("initial wealth must be positive");
    w0 = *initial_wealth;
  } else {
    const double sum_wages = pairwise_sum(state.wages);
    const double income_per_agent =
        total_income_per_step(params, sum_wages) / static_cast<double>(params.n_agents);
    w0 = income_per_agent / params.consumption_spec.omega;
  }
  state.wealth.assign(n, w0);
  state.t = 0;
  return state;
}

struct StepStats {
  double sum_wealth_start = 0.0;
  double sum_wealth_end = 0.0;
  double sum_consumption = 0.0;
  double sum_income = 0.0;
  double realized_r = 0.0;
  std::int64_t floor_events = 0;
  double floor_adjustment = 0.0;
  double max_rel_change = 0.0;
};

namespace engine_detail {

struct StepScratch {
  std::vector<double> new_wealth;
  std::vector<double> income;
  std::vector<double> consumption;
};

// One iteration of the difference equation. Agent updates are pure functions
// of the previous state and their stream key, so the parallel loop plus the
// fixed pairwise-tree reductions give results independent of thread count.
inline StepStats step_impl(PopulationState& state, const EconParams& params,
                           double profit_pool_value, double positivity_floor,
                           StepScratch& scratch, WorkerPool& pool,
                           bool track_rel_change) {
  const auto n = static_cast<std::size_t>(params.n_agents);
  scratch.new_wealth.resize(n);
  scratch.income.resize(n);
  scratch.consumption.resize(n);

  StepStats stats;
  const double sum_w = pairwise_sum(state.wealth);
  if (!(sum_w > 0.0)) throw ZeroWealth();
  stats.sum_wealth_start = sum_w;
  stats.realized_r = profit_pool_value / sum_w;
  const double mean_w = sum_w / static_cast<double>(n);

  const bool all_capital = params.profit_ratio >= 1.0;
  const ConsumptionSpec& cons = params.consumption_spec;
  const std::int64_t t = state.t;

  pool.for_range(static_cast<std::int64_t>(n), [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      const double w = state.wealth[static_cast<std::size_t>(i)];
      const double pi = profit_pool_value * (w / sum_w);
      double omega;
      switch (cons.kind) {
        case ConsumptionKind::StochasticPerStep:
          omega = sample_truncated_normal(
              StreamKey{params.seed, i, t, Channel::ConsumptionDraw}, cons.omega,
              cons.absolute_sd(), kConsumptionFloor);
          break;
        case ConsumptionKind::FixedPerAgent:
          omega = state.consumption_propensity[static_cast<std::size_t>(i)];
          break;
        default:
          omega = cons.omega;
          break;
      }
      if (params.policy) {
        omega = apply_policy(*params.policy, w, mean_w, omega);
      }
      const double e = all_capital ? 0.0 : state.wages[static_cast<std::size_t>(i)];
      const double y = e + pi;
      const double c = omega * w;
      scratch.income[static_cast<std::size_t>(i)] = y;
      scratch.consumption[static_cast<std::size_t>(i)] = c;
      scratch.new_wealth[static_cast<std::size_t>(i)] = w + y - c;
    }
  });

  // Serial pass: positivity flooring, sanity checks, convergence tracking.
  for (std::size_t i = 0; i < n; ++i) {
    double w_new = scratch.new_wealth[i];
    if (!std::isfinite(w_new)) throw NonFiniteWealth(t);
    if (w_new <= 0.0) {
      ++stats.floor_events;
      stats.floor_adjustment += positivity_floor - w_new;
      w_new = positivity_floor;
      scratch.new_wealth[i] = w_new;
    }
    if (track_rel_change) {
      const double w_old = state.wealth[i];
      const double rel = std::fabs(w_new - w_old) / std::max(w_old, 1e-300);
      if (rel > stats.max_rel_change) stats.max_rel_change = rel;
    }
  }

  stats.sum_consumption = pairwise_sum(scratch.consumption);
  stats.sum_income = pairwise_sum(scratch.income);
  stats.sum_wealth_end = pairwise_sum(scratch.new_wealth);
  state.wealth.swap(scratch.new_wealth);
  state.t = t + 1;
  return stats;
}

}  // namespace engine_detail

// Single public step; recomputes the run-level constants each call.
inline StepStats step(PopulationState& state, const EconParams& params) {
  params.validate();
  const double sum_wages = pairwise_sum(state.wages);
  const double pool_value = profit_pool(params, sum_wages);
  const double mean_income =
      total_income_per_step(params, sum_wages) / static_cast<double>(params.n_agents);
  const double floor_value = engine_detail::kPositivityFloorFrac * mean_income /
                             params.consumption_spec.omega;
  engine_detail::StepScratch scratch;
  WorkerPool pool(default_thread_count());
  return engine_detail::step_impl(state, params, pool_value, floor_value, scratch, pool,
                                  true);
}

// Full run: iterates the difference equation n_iterations times from the
// equilibrium initial condition, recording aggregates every iteration and
// wealth snapshots at the midpoint, the end, and any extra requested times.
inline RunResult run(const EconParams& params, int n_threads = 0,
                     std::optional<double> initial_wealth = {}) {
  params.validate();
  PopulationState state = initialize(params, initial_wealth);
  const std::int64_t total = params.n_iterations;

  std::set<std::int64_t> snapshot_times{total / 2, total};
  for (std::int64_t s : params.extra_snapshots) {
    if (s >= 1 && s <= total) snapshot_times.insert(s);
  }

  const double sum_wages = pairwise_sum(state.wages);
  const double pool_value = profit_pool(params, sum_wages);
  const double initial_mean_wealth = mean(state.wealth);
  const double floor_value = engine_detail::kPositivityFloorFrac * initial_mean_wealth;

  RunResult result;
  result.earnings = state.wages;
  result.initial_total_wealth = pairwise_sum(state.wealth);
  result.deterministic =
      params.consumption_spec.kind != ConsumptionKind::StochasticPerStep && !params.policy;
  result.aggregate_series.reserve(static_cast<std::size_t>(total));

  WorkerPool pool(n_threads > 0 ? n_threads : default_thread_count());
  engine_detail::StepScratch scratch;

  for (std::int64_t t = 0; t < total; ++t) {
    const bool track = t >= total - 100;
    const StepStats stats = engine_detail::step_impl(state, params, pool_value,
                                                     floor_value, scratch, pool, track);
    if (track && stats.max_rel_change > result.max_rel_change_last100) {
      result.max_rel_change_last100 = stats.max_rel_change;
    }
    result.total_floor_events += stats.floor_events;
    AggregatePoint point;
    point.sum_wealth = stats.sum_wealth_end;
    point.sum_consumption = stats.sum_consumption;
    point.sum_income = stats.sum_income;
    point.realized_r = stats.realized_r;
    point.floor_events = stats.floor_events;
    point.floor_adjustment = stats.floor_adjustment;
    result.aggregate_series.push_back(point);
    if (snapshot_times.count(t + 1) != 0) {
      result.wealth_snapshots.emplace(t + 1, state.wealth);
    }
  }

  result.final_wealth = state.wealth;
  const double sum_w_final = pairwise_sum(state.wealth);
  if (!(sum_w_final > 0.0)) throw ZeroWealth();
  const bool all_capital = params.profit_ratio >= 1.0;
  result.final_income.resize(state.wealth.size());
  for (std::size_t i = 0; i < state.wealth.size(); ++i) {
    const double e = all_capital ? 0.0 : state.wages[i];
    result.final_income[i] = e + pool_value * (state.wealth[i] / sum_w_final);
  }
  return result;
}

inline RunResult run(const ModelPreset& preset, int n_threads = 0) {
  return run(preset.params, n_threads);
}

struct StationarityReport {
  bool converged = false;
  std::int64_t at_iteration = 0;
};

// Deterministic runs must be numerically frozen over the final 100
// iterations; stochastic runs compare the midpoint and final snapshots with
// a Kolmogorov-Smirnov statistic.
inline StationarityReport detect_stationarity(const RunResult& result) {
  if (result.wealth_snapshots.size() < 2) {
    throw ConfigError("stationarity detection needs at least two snapshots");
  }
  StationarityReport report;
  if (result.deterministic) {
    report.converged = result.max_rel_change_last100 < 1e-9;
    report.at_iteration =
        std::max<std::int64_t>(result.wealth_snapshots.rbegin()->first - 100, 0);
    return report;
  }
  const auto& first = *result.wealth_snapshots.begin();
  const auto& last = *result.wealth_snapshots.rbegin();
  const double ks = two_sample_ks(first.second, last.second);
  report.converged = ks < 0.02;
  report.at_iteration = first.first;
  return report;
}

}  // namespace glv
