#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "glv/numeric.hpp"

namespace glv {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroWealth : std::runtime_error {
  ZeroWealth() : std::runtime_error("total wealth is zero") {}
};

struct NonFiniteWealth : std::runtime_error {
  explicit NonFiniteWealth(std::int64_t iter)
      : std::runtime_error("non-finite wealth at iteration " + std::to_string(iter)),
        iteration(iter) {}
  std::int64_t iteration = 0;
};

struct TooFewAgents : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AllZero : std::runtime_error {
  AllZero() : std::runtime_error("all values are zero") {}
};

struct DegenerateTail : std::runtime_error {
  DegenerateTail() : std::runtime_error("all tail values are equal") {}
};

struct EmptyInput : std::runtime_error {
  EmptyInput() : std::runtime_error("empty input") {}
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Divergence : std::runtime_error {
  explicit Divergence(std::int64_t step)
      : std::runtime_error("population diverged at step " + std::to_string(step)),
        step(step) {}
  std::int64_t step = 0;
};

struct InsufficientGrid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Model parameters
// ---------------------------------------------------------------------------

// Normal(mean, sd); sd = 0 degenerates to the constant `mean`.
struct DistributionSpec {
  double mean = 0.0;
  double sd = 0.0;
};

enum class ConsumptionKind {
  StochasticPerStep,  // fresh draw each agent-iteration around a common base
  FixedPerAgent,      // per-agent trait drawn once at initialization
  FixedUniform,       // one rate shared by every agent
};

struct ConsumptionSpec {
  ConsumptionKind kind = ConsumptionKind::FixedUniform;
  double omega = 0.2;   // base / mean consumption rate per iteration
  double spread = 0.0;  // StochasticPerStep: sd relative to omega; FixedPerAgent: absolute sd

  double absolute_sd() const {
    return kind == ConsumptionKind::StochasticPerStep ? omega * spread : spread;
  }

  static ConsumptionSpec stochastic_per_step(double base, double relative_sd) {
    return {ConsumptionKind::StochasticPerStep, base, relative_sd};
  }
  static ConsumptionSpec fixed_per_agent(double mean, double sd) {
    return {ConsumptionKind::FixedPerAgent, mean, sd};
  }
  static ConsumptionSpec fixed_uniform(double omega) {
    return {ConsumptionKind::FixedUniform, omega, 0.0};
  }
};

struct PolicySpec {
  enum class Kind { CompulsorySaving };
  Kind kind = Kind::CompulsorySaving;
  double wealth_threshold_frac = 0.9;  // applies when w_i < frac * mean wealth
  double consumption_cut_frac = 0.2;   // that iteration's rate is scaled by (1 - cut)
};

struct EconParams {
  std::int64_t n_agents = 10000;
  std::int64_t n_iterations = 10000;
  DistributionSpec wage_spec{100.0, 0.0};
  ConsumptionSpec consumption_spec = ConsumptionSpec::fixed_uniform(0.2);
  double profit_ratio = 0.5;  // rho: capital's share of total income
  // Total income Y per iteration is sum(e)/(1-rho) while rho < 1; the
  // all-capital limit rho = 1 needs the income pool supplied explicitly.
  std::optional<double> explicit_total_income;
  std::uint64_t seed = 0;
  std::optional<PolicySpec> policy;
  std::vector<std::int64_t> extra_snapshots;

  void validate() const {
    if (n_agents < 2) throw ConfigError("n_agents must be at least 2");
    if (n_iterations < 1) throw ConfigError("n_iterations must be at least 1");
    if (profit_ratio < 0.0 || profit_ratio > 1.0)
      throw ConfigError("profit_ratio must lie in [0, 1]");
    if (wage_spec.mean <= 0.0) throw ConfigError("wage mean must be positive");
    if (wage_spec.sd < 0.0) throw ConfigError("wage sd must be nonnegative");
    if (consumption_spec.omega <= 0.0)
      throw ConfigError("consumption rate mean must be positive");
    if (consumption_spec.spread < 0.0)
      throw ConfigError("consumption spread must be nonnegative");
    if (profit_ratio == 1.0 && !explicit_total_income)
      throw ConfigError("profit_ratio = 1 requires an explicit total income");
    if (explicit_total_income && *explicit_total_income <= 0.0)
      throw ConfigError("total income must be positive");
    if (policy) {
      if (policy->wealth_threshold_frac <= 0.0 || policy->wealth_threshold_frac >= 1.0)
        throw ConfigError("policy wealth threshold must lie in (0, 1)");
      if (policy->consumption_cut_frac <= 0.0 || policy->consumption_cut_frac >= 1.0)
        throw ConfigError("policy consumption cut must lie in (0, 1)");
    }
  }
};

// ---------------------------------------------------------------------------
// Simulation state and results
// ---------------------------------------------------------------------------

struct PopulationState {
  std::int64_t t = 0;
  std::vector<double> wealth;
  std::vector<double> wages;  // immutable after initialization
  std::vector<double> consumption_propensity;  // present only for FixedPerAgent
};

struct AggregatePoint {
  double sum_wealth = 0.0;       // after the iteration's update (post-floor)
  double sum_consumption = 0.0;
  double sum_income = 0.0;
  double realized_r = 0.0;       // profit pool over start-of-iteration wealth
  std::int64_t floor_events = 0;
  double floor_adjustment = 0.0;  // total wealth added by positivity flooring
};

struct RunResult {
  std::vector<double> final_wealth;
  std::vector<double> final_income;  // e_i + pi_i per iteration, from the final state
  std::vector<double> earnings;      // the immutable wage traits
  std::map<std::int64_t, std::vector<double>> wealth_snapshots;
  std::vector<AggregatePoint> aggregate_series;
  double initial_total_wealth = 0.0;
  bool deterministic = false;  // no per-step draws and no policy switching
  double max_rel_change_last100 = 0.0;
  std::int64_t total_floor_events = 0;
};

// ---------------------------------------------------------------------------
// Ratio bookkeeping
// ---------------------------------------------------------------------------

struct RatioReport {
  double profit_rate = 0.0;   // r = sum(pi) / sum(w)
  double income_rate = 0.0;   // Gamma = sum(Y) / sum(w)
  double bowley_ratio = 0.0;  // beta = labour's share of income
  double profit_ratio = 0.0;  // rho = capital's share of income
};

// rho is computed as sum(pi)/sum(Y) and beta as its complement, so
// beta + rho == 1 holds exactly; beta equals sum(e)/sum(Y) to rounding.
inline RatioReport derive_ratios(double sum_e, double sum_pi, double sum_w) {
  if (!(sum_w > 0.0)) throw ZeroWealth();
  const double sum_y = sum_e + sum_pi;
  RatioReport out;
  out.profit_rate = sum_pi / sum_w;
  out.income_rate = sum_y / sum_w;
  out.profit_ratio = sum_y > 0.0 ? sum_pi / sum_y : 0.0;
  out.bowley_ratio = 1.0 - out.profit_ratio;
  return out;
}

// Profit pool distributed per iteration: Pi = E * rho / (1 - rho), or the
// explicit pool in the all-capital limit where wages are off.
inline double profit_pool(const EconParams& params, double sum_wages) {
  if (params.profit_ratio >= 1.0) {
    return params.explicit_total_income.value();
  }
  return sum_wages * params.profit_ratio / (1.0 - params.profit_ratio);
}

inline double effective_wage_sum(const EconParams& params, double sum_wages) {
  return params.profit_ratio >= 1.0 ? 0.0 : sum_wages;
}

inline double total_income_per_step(const EconParams& params, double sum_wages) {
  return effective_wage_sum(params, sum_wages) + profit_pool(params, sum_wages);
}

inline RatioReport derive_ratios(const EconParams& params, const PopulationState& state) {
  const double sum_w = pairwise_sum(state.wealth);
  const double sum_wages = pairwise_sum(state.wages);
  return derive_ratios(effective_wage_sum(params, sum_wages),
                       profit_pool(params, sum_wages), sum_w);
}

}  // namespace glv
