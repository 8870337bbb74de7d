#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "glv/numeric.hpp"
#include "glv/rng.hpp"
#include "glv/types.hpp"

namespace glv {

// Classical two-species Lotka-Volterra dynamics, the N-species generalized
// derivative field, and the multiplicative city-population difference
// equation that motivates the GLV distribution.

// ---------------------------------------------------------------------------
// Classical predator-prey ODEs
// ---------------------------------------------------------------------------

struct LVParams {
  double a = 1.0;          // prey growth rate
  double c = 1.0;          // predator death rate
  double alpha_int = 1.0;  // predation rate
  double gamma_int = 1.0;  // conversion rate

  void validate() const {
    if (!(a > 0.0 && c > 0.0 && alpha_int > 0.0 && gamma_int > 0.0)) {
      throw ConfigError("Lotka-Volterra rates must all be positive");
    }
  }
};

using PhasePoint = std::pair<double, double>;  // (prey x, predator y)

inline PhasePoint lv_derivative(const PhasePoint& s, const LVParams& p) {
  return {s.first * (p.a - p.alpha_int * s.second),
          s.second * (-p.c + p.gamma_int * s.first)};
}

// One fixed-step RK4 step of dx/dt = x(a - alpha y), dy/dt = y(-c + gamma x).
inline PhasePoint lv_step_rk4(const PhasePoint& s, const LVParams& p, double dt) {
  const PhasePoint k1 = lv_derivative(s, p);
  const PhasePoint s2{s.first + 0.5 * dt * k1.first, s.second + 0.5 * dt * k1.second};
  const PhasePoint k2 = lv_derivative(s2, p);
  const PhasePoint s3{s.first + 0.5 * dt * k2.first, s.second + 0.5 * dt * k2.second};
  const PhasePoint k3 = lv_derivative(s3, p);
  const PhasePoint s4{s.first + dt * k3.first, s.second + dt * k3.second};
  const PhasePoint k4 = lv_derivative(s4, p);
  return {s.first + dt / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first),
          s.second + dt / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second)};
}

// Conserved quantity of the closed orbits: V = gamma x - c ln x + alpha y - a ln y.
inline double lv_invariant(const PhasePoint& s, const LVParams& p) {
  return p.gamma_int * s.first - p.c * std::log(s.first) + p.alpha_int * s.second -
         p.a * std::log(s.second);
}

// ---------------------------------------------------------------------------
// N-species generalized Lotka-Volterra derivative field
// ---------------------------------------------------------------------------

struct GLVSystem {
  std::vector<double> r;               // intrinsic growth/death rates
  std::vector<std::vector<double>> A;  // interaction matrix a_{i,j}
};

// dx_i/dt = x_i (r_i + sum_j a_{i,j} x_j)
inline std::vector<double> glv_derivative(std::span<const double> x, const GLVSystem& sys) {
  const std::size_t n = x.size();
  if (sys.r.size() != n || sys.A.size() != n) {
    throw DimensionMismatch("system dimensions do not match state");
  }
  std::vector<double> dx(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sys.A[i].size() != n) throw DimensionMismatch("interaction matrix is not square");
    double interaction = 0.0;
    for (std::size_t j = 0; j < n; ++j) interaction += sys.A[i][j] * x[j];
    dx[i] = x[i] * (sys.r[i] + interaction);
  }
  return dx;
}

// ---------------------------------------------------------------------------
// City-population difference equation
//   w_{i,t+1} = lambda w_{i,t} + a_t wbar_t - c_t wbar_t w_{i,t}
// ---------------------------------------------------------------------------

struct StochasticRateSpec {
  double mean = 0.0;
  double sd = 0.0;
};

struct CityModelParams {
  StochasticRateSpec lambda_spec{1.0, 0.1};  // per-city multiplicative growth
  StochasticRateSpec a_spec{0.1, 0.0};       // arrivals, shared within a step
  StochasticRateSpec c_spec{0.1, 0.0};       // departures, shared within a step
  std::int64_t n_cities = 10000;
  std::int64_t n_steps = 10000;
  std::uint64_t seed = 0;

  // Stationarity additionally needs c_spec.mean > 0; degenerate rate choices
  // are allowed so the divergent and one-step regimes stay reachable.
  void validate() const {
    if (n_cities < 2) throw ConfigError("city model needs at least 2 cities");
    if (n_steps < 1) throw ConfigError("city model needs at least 1 step");
    if (lambda_spec.mean < 0.0 || a_spec.mean < 0.0 || c_spec.mean < 0.0 ||
        lambda_spec.sd < 0.0 || a_spec.sd < 0.0 || c_spec.sd < 0.0) {
      throw ConfigError("city model rates must be nonnegative");
    }
  }
};

struct CityTrajectoryPoint {
  std::int64_t t = 0;
  double mean_pop = 0.0;
  double max_pop = 0.0;
};

struct CityRunResult {
  std::vector<double> populations;
  std::vector<CityTrajectoryPoint> trajectory;
};

namespace dynamics_detail {
inline constexpr std::uint64_t kCityLambdaTag = 1;
inline constexpr std::uint64_t kCitySharedTag = 2;
inline constexpr double kCityFloorFrac = 1e-9;

inline double truncated_rate(std::uint64_t seed, std::uint64_t tag, std::uint64_t step,
                             std::uint64_t index, const StochasticRateSpec& spec) {
  if (spec.sd == 0.0) return spec.mean;
  const std::uint64_t state = keyed_state(seed, tag, step, index);
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const double draw = spec.mean + spec.sd * keyed_standard_normal(state, attempt);
    if (draw >= 0.0) return draw;
  }
  return 0.0;
}
}  // namespace dynamics_detail

// The growth factor lambda is drawn per city per step (the idiosyncratic
// multiplicative noise that generates the power law); the arrival and
// departure rates a_t, c_t are drawn once per step and shared by all cities.
inline CityRunResult run_city_model(const CityModelParams& params) {
  params.validate();
  using namespace dynamics_detail;
  const auto n = static_cast<std::size_t>(params.n_cities);
  CityRunResult result;
  result.populations.assign(n, 1.0);
  result.trajectory.reserve(static_cast<std::size_t>(params.n_steps));
  std::vector<double> next(n);

  for (std::int64_t t = 0; t < params.n_steps; ++t) {
    const double wbar = mean(result.populations);
    const double a_t = truncated_rate(params.seed, kCitySharedTag, t, 0, params.a_spec);
    const double c_t = truncated_rate(params.seed, kCitySharedTag, t, 1, params.c_spec);
    const double floor_value = kCityFloorFrac * wbar;
    double max_pop = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lambda = truncated_rate(params.seed, kCityLambdaTag, t, i, params.lambda_spec);
      const double w = result.populations[i];
      double w_next = lambda * w + a_t * wbar - c_t * wbar * w;
      if (!(w_next < 1e300)) throw Divergence(t);
      if (w_next <= 0.0) w_next = floor_value;
      next[i] = w_next;
      if (w_next > max_pop) max_pop = w_next;
    }
    result.populations.swap(next);
    result.trajectory.push_back({t + 1, mean(result.populations), max_pop});
  }
  return result;
}

}  // namespace glv
