#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace glv {

// Pairwise (tree) summation: deterministic for a given array regardless of
// thread count, and more accurate than a running sum on long vectors.
inline double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 32) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline double mean(std::span<const double> values) {
  return values.empty() ? 0.0 : pairwise_sum(values) / static_cast<double>(values.size());
}

// Two-sample Kolmogorov-Smirnov statistic: sup |F1 - F2| over the pooled
// sample points. Inputs need not be sorted.
inline double two_sample_ks(std::span<const double> a, std::span<const double> b) {
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

namespace numeric_detail {

inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      double flo, double fmid, double fhi) {
  return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double lo,
                               double hi, double flo, double fmid, double fhi,
                               double whole, double tol, int depth) {
  const double m = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, lo, m, flo, flm, fmid);
  const double right = simpson(f, m, hi, fmid, frm, fhi);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, lo, m, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

}  // namespace numeric_detail

// Adaptive Simpson quadrature on a finite interval.
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-10, int max_depth = 40) {
  if (!(hi > lo)) return 0.0;
  const double m = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(m), fhi = f(hi);
  const double whole = numeric_detail::simpson(f, lo, hi, flo, fmid, fhi);
  return numeric_detail::adaptive_simpson(f, lo, hi, flo, fmid, fhi, whole, tol, max_depth);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Ordinary least squares y = slope*x + intercept with the coefficient of
// determination of the fit.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  LinearFit out;
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return out;
  const double mx = mean(x.first(n)), my = mean(y.first(n));
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  out.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  out.intercept = my - out.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (out.slope * x[i] + out.intercept);
      ss_res += r * r;
    }
    out.r_squared = 1.0 - ss_res / syy;
  }
  return out;
}

}  // namespace glv
