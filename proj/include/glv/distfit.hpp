#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glv/numeric.hpp"
#include "glv/optim.hpp"
#include "glv/types.hpp"

namespace glv {

// Density evaluation and reduced-chi-squared histogram fitting for the GLV,
// log-normal, Maxwell-Boltzmann and Pareto-tail families.

enum class DistFamily { GLV, LogNormal, MaxwellBoltzmann, ParetoTail };

inline const char* family_name(DistFamily family) {
  switch (family) {
    case DistFamily::GLV: return "glv";
    case DistFamily::LogNormal: return "lognormal";
    case DistFamily::MaxwellBoltzmann: return "maxboltz";
    case DistFamily::ParetoTail: return "pareto";
  }
  return "unknown";
}

struct DistParams {
  DistFamily family = DistFamily::GLV;
  double K = 1.0;      // GLV scale
  double L = 1.0;      // GLV wealth normalizer
  double alpha = 2.0;  // GLV / Pareto tail exponent
  double mu = 0.0;     // log-normal
  double sigma = 1.0;  // log-normal
  double a = 1.0;      // Maxwell-Boltzmann scale
  double x_min = 1.0;  // Pareto support start

  static DistParams glv(double K, double L, double alpha) {
    DistParams p;
    p.family = DistFamily::GLV;
    p.K = K;
    p.L = L;
    p.alpha = alpha;
    return p;
  }
  static DistParams glv_normalized(double L, double alpha);
  static DistParams lognormal(double mu, double sigma) {
    DistParams p;
    p.family = DistFamily::LogNormal;
    p.mu = mu;
    p.sigma = sigma;
    return p;
  }
  static DistParams maxboltz(double a) {
    DistParams p;
    p.family = DistFamily::MaxwellBoltzmann;
    p.a = a;
    return p;
  }
  static DistParams pareto_tail(double alpha, double x_min) {
    DistParams p;
    p.family = DistFamily::ParetoTail;
    p.alpha = alpha;
    p.x_min = x_min;
    return p;
  }
};

// P(w) = K exp(-(alpha-1)/(w/L)) / (w/L)^(1+alpha); 0 at w <= 0 by
// continuous extension. The exponential factor gives the natural offset
// from zero.
inline double glv_pdf(double w, double K, double L, double alpha) {
  if (w <= 0.0) return 0.0;
  const double x = w / L;
  return K * std::exp(-(alpha - 1.0) / x - (1.0 + alpha) * std::log(x));
}

// K that normalizes the GLV density: integral over w is K*L*Gamma(alpha)/
// (alpha-1)^alpha, so K = (alpha-1)^alpha / (L*Gamma(alpha)).
inline double glv_normalizing_K(double L, double alpha) {
  return std::exp(alpha * std::log(alpha - 1.0) - std::log(L) - std::lgamma(alpha));
}

inline DistParams DistParams::glv_normalized(double L, double alpha) {
  return glv(glv_normalizing_K(L, alpha), L, alpha);
}

inline double lognormal_pdf(double w, double mu, double sigma) {
  if (w <= 0.0) return 0.0;
  const double z = (std::log(w) - mu) / sigma;
  return std::exp(-0.5 * z * z) / (w * sigma * 2.506628274631000502415765284811);
}

// Speed-distribution form: sqrt(2/pi) * w^2 exp(-w^2 / (2 a^2)) / a^3.
inline double maxboltz_pdf(double w, double a) {
  if (w <= 0.0) return 0.0;
  const double z = w / a;
  return 0.79788456080286535587989211986876 * z * z * std::exp(-0.5 * z * z) / a;
}

// Pareto tail in the pdf-exponent convention, matching hill_alpha:
// f(w) = (alpha-1) x_min^(alpha-1) w^-alpha for w >= x_min (alpha > 1).
inline double pareto_pdf(double w, double alpha, double x_min) {
  if (w < x_min) return 0.0;
  return (alpha - 1.0) / x_min * std::pow(x_min / w, alpha);
}

inline double pdf(double w, const DistParams& p) {
  switch (p.family) {
    case DistFamily::GLV: return glv_pdf(w, p.K, p.L, p.alpha);
    case DistFamily::LogNormal: return lognormal_pdf(w, p.mu, p.sigma);
    case DistFamily::MaxwellBoltzmann: return maxboltz_pdf(w, p.a);
    case DistFamily::ParetoTail: return pareto_pdf(w, p.alpha, p.x_min);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Histograms
// ---------------------------------------------------------------------------

struct Histogram {
  std::vector<double> bin_edges;  // ascending, counts.size() + 1 entries
  std::vector<double> counts;
  double assumed_error = 100.0;  // per-bin measurement sd for the chi^2 objective

  void validate() const {
    if (counts.empty() || bin_edges.size() != counts.size() + 1) {
      throw ConfigError("histogram edges must be counts + 1");
    }
    for (std::size_t i = 0; i + 1 < bin_edges.size(); ++i) {
      if (!(bin_edges[i] < bin_edges[i + 1])) {
        throw ConfigError("histogram edges must be strictly ascending");
      }
    }
  }
};

// Equal-width bins; a value on an edge goes to the right bin except at the
// last edge (bin index floor((v-lo)/width), clamped).
inline Histogram histogram(std::span<const double> values, int n_bins,
                           std::optional<std::pair<double, double>> range = {}) {
  if (values.empty()) throw EmptyInput();
  if (n_bins < 2) throw ConfigError("histogram needs at least 2 bins");
  double lo, hi;
  if (range) {
    lo = range->first;
    hi = range->second;
  } else {
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
  }
  if (!(hi > lo)) hi = lo + 1.0;
  Histogram h;
  h.counts.assign(static_cast<std::size_t>(n_bins), 0.0);
  h.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  const double width = (hi - lo) / n_bins;
  for (int b = 0; b <= n_bins; ++b) h.bin_edges[static_cast<std::size_t>(b)] = lo + width * b;
  h.bin_edges.back() = hi;
  for (double v : values) {
    auto bin = static_cast<std::int64_t>(std::floor((v - lo) / width));
    bin = std::clamp<std::int64_t>(bin, 0, n_bins - 1);
    h.counts[static_cast<std::size_t>(bin)] += 1.0;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Chi-squared fitting
// ---------------------------------------------------------------------------

struct FitResult {
  DistParams params;
  double reduced_chi2 = 0.0;
  long iterations = 0;
  bool converged = false;
};

namespace distfit_detail {

// Fixed-node composite Simpson over one bin; plenty for these smooth pdfs
// at histogram bin widths, and deterministic.
inline double bin_integral(const DistParams& p, double lo, double hi) {
  constexpr int kIntervals = 8;
  const double h = (hi - lo) / kIntervals;
  double sum = pdf(lo, p) + pdf(hi, p);
  for (int i = 1; i < kIntervals; ++i) {
    sum += pdf(lo + h * i, p) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

// free-parameter vector <-> DistParams, with positivity kept by log
// transforms (and alpha > 1 where the family requires it)
inline std::vector<double> pack(const DistParams& p) {
  switch (p.family) {
    case DistFamily::GLV: return {std::log(p.L), std::log(p.alpha - 1.0)};
    case DistFamily::LogNormal: return {p.mu, std::log(p.sigma)};
    case DistFamily::MaxwellBoltzmann: return {std::log(p.a)};
    case DistFamily::ParetoTail: return {std::log(p.alpha - 1.0), std::log(p.x_min)};
  }
  return {};
}

inline DistParams unpack(DistFamily family, const std::vector<double>& theta) {
  switch (family) {
    case DistFamily::GLV:
      return DistParams::glv_normalized(std::exp(theta[0]), 1.0 + std::exp(theta[1]));
    case DistFamily::LogNormal:
      return DistParams::lognormal(theta[0], std::exp(theta[1]));
    case DistFamily::MaxwellBoltzmann:
      return DistParams::maxboltz(std::exp(theta[0]));
    case DistFamily::ParetoTail:
      return DistParams::pareto_tail(1.0 + std::exp(theta[0]), std::exp(theta[1]));
  }
  return {};
}

inline double chi2(const Histogram& hist, const DistParams& p, double n_total) {
  double acc = 0.0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double model =
        n_total * bin_integral(p, hist.bin_edges[b], hist.bin_edges[b + 1]);
    const double resid = (hist.counts[b] - model) / hist.assumed_error;
    acc += resid * resid;
  }
  return acc;
}

}  // namespace distfit_detail

inline int fit_param_count(DistFamily family) {
  return family == DistFamily::MaxwellBoltzmann ? 1 : 2;
}

// Data-driven starting point from the histogram's first two moments.
inline DistParams default_fit_init(const Histogram& hist, DistFamily family) {
  hist.validate();
  double n = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double mid = 0.5 * (hist.bin_edges[b] + hist.bin_edges[b + 1]);
    n += hist.counts[b];
    m1 += hist.counts[b] * mid;
    m2 += hist.counts[b] * mid * mid;
  }
  if (!(n > 0.0)) throw EmptyInput();
  const double mean_v = m1 / n;
  const double var_v = std::max(m2 / n - mean_v * mean_v, 1e-12 * mean_v * mean_v);
  switch (family) {
    case DistFamily::GLV:
      // GLV mean is L and variance L^2/(alpha-2)
      return DistParams::glv_normalized(mean_v, 2.0 + mean_v * mean_v / var_v);
    case DistFamily::LogNormal: {
      const double s2 = std::log(1.0 + var_v / (mean_v * mean_v));
      return DistParams::lognormal(std::log(mean_v) - 0.5 * s2, std::sqrt(s2));
    }
    case DistFamily::MaxwellBoltzmann:
      // mean = 2 a sqrt(2/pi)
      return DistParams::maxboltz(mean_v * 0.62665706865775012560);
    case DistFamily::ParetoTail: {
      const double x0 = std::max(hist.bin_edges.front(), 1e-9 * mean_v);
      return DistParams::pareto_tail(2.0, x0 > 0.0 ? x0 : 1.0);
    }
  }
  return {};
}

// Minimizes sum over bins of ((count - N * integral(pdf)) / assumed_error)^2
// and reports the reduced value chi^2 / (bins - free params). Deterministic
// for a given init; a run that exhausts its evaluation budget returns the
// best point found with converged = false.
inline FitResult fit(const Histogram& hist, DistFamily family, const DistParams& init,
                     long max_evals = 100000) {
  hist.validate();
  const int n_params = fit_param_count(family);
  int nonempty = 0;
  for (double c : hist.counts) {
    if (c > 0.0) ++nonempty;
  }
  if (nonempty < n_params + 1) {
    throw ConfigError("fit needs more nonempty bins than free parameters");
  }
  const double n_total = pairwise_sum(hist.counts);

  auto objective = [&](const std::vector<double>& theta) {
    const DistParams p = distfit_detail::unpack(family, theta);
    const double value = distfit_detail::chi2(hist, p, n_total);
    return std::isfinite(value) ? value : std::numeric_limits<double>::max();
  };

  const std::vector<double> theta0 = distfit_detail::pack(init);
  const MinimizeResult opt = minimize(objective, theta0, 0.25, max_evals, 1e-12, 5);

  FitResult result;
  result.params = distfit_detail::unpack(family, opt.x);
  const auto dof = static_cast<double>(hist.counts.size()) - n_params;
  result.reduced_chi2 = opt.value / std::max(dof, 1.0);
  result.iterations = opt.evaluations;
  result.converged = opt.converged;
  return result;
}

inline FitResult fit(const Histogram& hist, DistFamily family, long max_evals = 100000) {
  return fit(hist, family, default_fit_init(hist, family), max_evals);
}

}  // namespace glv
