#pragma once

#include "glv/types.hpp"

namespace glv {

// Compulsory saving (the only policy kind): agents strictly below the wealth
// threshold have that iteration's consumption rate cut by a fixed fraction.
// mean_wealth is the population mean at the start of the iteration, so the
// rule is order-independent within a step. The cut is re-derived from the
// trait (or draw) every iteration; it never compounds.
inline double apply_policy(const PolicySpec& spec, double w_i, double mean_wealth,
                           double omega_i) {
  if (spec.kind != PolicySpec::Kind::CompulsorySaving) return omega_i;
  if (w_i < spec.wealth_threshold_frac * mean_wealth) {
    return omega_i * (1.0 - spec.consumption_cut_frac);
  }
  return omega_i;
}

}  // namespace glv
