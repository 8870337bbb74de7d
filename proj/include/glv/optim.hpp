#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "glv/rng.hpp"

namespace glv {

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

namespace optim_detail {

struct SimplexPoint {
  std::vector<double> x;
  double value;
};

inline MinimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                  const std::vector<double>& x0, double step,
                                  long max_evals, double tol, long& evals_used) {
  const std::size_t dim = x0.size();
  std::vector<SimplexPoint> simplex;
  simplex.reserve(dim + 1);
  long evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  simplex.push_back({x0, eval(x0)});
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> x = x0;
    x[j] += step;
    simplex.push_back({x, eval(x)});
  }

  MinimizeResult result;
  while (evals < max_evals) {
    std::sort(simplex.begin(), simplex.end(),
              [](const SimplexPoint& a, const SimplexPoint& b) { return a.value < b.value; });
    const double spread = simplex.back().value - simplex.front().value;
    if (spread <= tol * (std::fabs(simplex.front().value) + tol)) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[k].x[j];
    }
    for (std::size_t j = 0; j < dim; ++j) centroid[j] /= static_cast<double>(dim);

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        x[j] = centroid[j] + coef * (simplex.back().x[j] - centroid[j]);
      }
      return x;
    };

    std::vector<double> reflected = blend(-1.0);
    const double fr = eval(reflected);
    if (fr < simplex.front().value) {
      std::vector<double> expanded = blend(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex.back() = {std::move(expanded), fe};
      } else {
        simplex.back() = {std::move(reflected), fr};
      }
    } else if (fr < simplex[dim - 1].value) {
      simplex.back() = {std::move(reflected), fr};
    } else {
      const bool outside = fr < simplex.back().value;
      std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, simplex.back().value)) {
        simplex.back() = {std::move(contracted), fc};
      } else {
        // shrink toward the best vertex
        for (std::size_t k = 1; k <= dim; ++k) {
          for (std::size_t j = 0; j < dim; ++j) {
            simplex[k].x[j] = simplex[0].x[j] + 0.5 * (simplex[k].x[j] - simplex[0].x[j]);
          }
          simplex[k].value = eval(simplex[k].x);
        }
      }
    }
  }

  std::sort(simplex.begin(), simplex.end(),
            [](const SimplexPoint& a, const SimplexPoint& b) { return a.value < b.value; });
  result.x = simplex.front().x;
  result.value = simplex.front().value;
  result.evaluations = evals;
  evals_used += evals;
  return result;
}

}  // namespace optim_detail

// Derivative-free simplex descent with a handful of deterministically
// jittered restarts around the best point found so far. Never returns a
// point worse than x0.
inline MinimizeResult minimize(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& x0, double step = 0.25,
                               long max_evals = 100000, double tol = 1e-12,
                               int restarts = 5) {
  long evals_used = 0;
  MinimizeResult best;
  best.x = x0;
  best.value = f(x0);
  ++evals_used;
  best.converged = false;

  for (int r = 0; r < restarts && evals_used < max_evals; ++r) {
    std::vector<double> start = best.x;
    if (r > 0) {
      const std::uint64_t state = keyed_state(0x6f7074696dULL, static_cast<std::uint64_t>(r), 0, 0);
      for (std::size_t j = 0; j < start.size(); ++j) {
        start[j] += step * (keyed_uniform01(state, j) - 0.5);
      }
    }
    const long budget = max_evals - evals_used;
    MinimizeResult local =
        optim_detail::nelder_mead(f, start, step, budget, tol, evals_used);
    if (local.value < best.value) {
      best.x = local.x;
      best.value = local.value;
    }
    best.converged = best.converged || local.converged;
  }
  best.evaluations = evals_used;
  return best;
}

}  // namespace glv
