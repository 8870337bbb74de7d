#include <catch2/catch_amalgamated.hpp>

#include "glv/policy.hpp"
#include "glv/rng.hpp"

using namespace glv;

TEST_CASE("compulsory saving cuts the rate below the threshold") {
  PolicySpec spec;  // threshold 0.9, cut 0.2
  const double mean_wealth = 1000.0;
  CHECK(apply_policy(spec, 500.0, mean_wealth, 0.20) == Catch::Approx(0.16).margin(1e-15));
  CHECK(apply_policy(spec, 1000.0, mean_wealth, 0.20) == 0.20);
  // the rule is a strict inequality at the boundary
  CHECK(apply_policy(spec, 900.0, mean_wealth, 0.20) == 0.20);
}

TEST_CASE("policy never increases a consumption rate") {
  PolicySpec spec;
  spec.wealth_threshold_frac = 0.75;
  spec.consumption_cut_frac = 0.35;
  for (std::int64_t i = 0; i < 5000; ++i) {
    const double w = 2000.0 * sample_uniform01({31, i, 0, Channel::TraitInit});
    const double omega = 0.05 + 0.4 * sample_uniform01({31, i, 1, Channel::TraitInit});
    const double cut = apply_policy(spec, w, 1000.0, omega);
    CHECK(cut <= omega);
    CHECK(cut > 0.0);
  }
}
