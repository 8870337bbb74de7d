#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "glv/engine.hpp"
#include "glv/rng.hpp"
#include "glv/types.hpp"

using namespace glv;

TEST_CASE("equal wage and profit pools give beta = rho = 0.5") {
  const RatioReport report = derive_ratios(500.0, 500.0, 10000.0);
  CHECK(report.profit_ratio == 0.5);
  CHECK(report.bowley_ratio == 0.5);
}

TEST_CASE("all-labour economy has rho 0 and beta 1") {
  const RatioReport report = derive_ratios(1000.0, 0.0, 5000.0);
  CHECK(report.profit_ratio == 0.0);
  CHECK(report.bowley_ratio == 1.0);
}

TEST_CASE("ratio definitions reproduce direct arithmetic") {
  // sum_w = 1e6, sum_Y = 3e5 with sum_pi = 1e5 (so sum_e = 2e5)
  const RatioReport report = derive_ratios(2e5, 1e5, 1e6);
  CHECK(report.profit_rate == Catch::Approx(0.1).epsilon(1e-14));
  CHECK(report.income_rate == Catch::Approx(0.3).epsilon(1e-14));
  CHECK(report.profit_ratio == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(report.bowley_ratio == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("beta + rho is exactly one and rho = r/Gamma to 1e-12") {
  for (std::int64_t i = 0; i < 2000; ++i) {
    const double sum_e = 1.0 + 1e6 * sample_uniform01({21, i, 0, Channel::TraitInit});
    const double sum_pi = 1e6 * sample_uniform01({21, i, 1, Channel::TraitInit});
    const double sum_w = 1.0 + 1e8 * sample_uniform01({21, i, 2, Channel::TraitInit});
    const RatioReport report = derive_ratios(sum_e, sum_pi, sum_w);
    CHECK(report.bowley_ratio + report.profit_ratio == 1.0);
    const double via_rates = report.profit_rate / report.income_rate;
    CHECK(std::fabs(via_rates - report.profit_ratio) <= 1e-12 * report.profit_ratio + 1e-15);
  }
}

TEST_CASE("zero total wealth is rejected") {
  CHECK_THROWS_AS(derive_ratios(1.0, 1.0, 0.0), ZeroWealth);
}

TEST_CASE("ratios derived from a population state match the configured rho") {
  const ModelPreset preset = make_preset(ModelName::M1C, 99, 100, 10);
  const PopulationState state = initialize(preset.params);
  const RatioReport report = derive_ratios(preset.params, state);
  CHECK(report.profit_ratio == Catch::Approx(0.5).epsilon(1e-12));
  CHECK(report.bowley_ratio + report.profit_ratio == 1.0);
}

TEST_CASE("parameter validation rejects bad inputs") {
  EconParams params = make_preset(ModelName::M1C, 1).params;
  params.profit_ratio = 1.2;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.profit_ratio = -0.1;
  CHECK_THROWS_AS(params.validate(), ConfigError);

  params = make_preset(ModelName::M1C, 1).params;
  params.n_agents = 1;
  CHECK_THROWS_AS(params.validate(), ConfigError);

  params = make_preset(ModelName::M1C, 1).params;
  params.n_iterations = 0;
  CHECK_THROWS_AS(params.validate(), ConfigError);

  params = make_preset(ModelName::M1C, 1).params;
  params.wage_spec.mean = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);

  // the all-capital limit needs the income pool spelled out
  params = make_preset(ModelName::M1C, 1).params;
  params.profit_ratio = 1.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.explicit_total_income = 9e6;
  CHECK_NOTHROW(params.validate());

  params = make_preset(ModelName::M1D, 1).params;
  params.policy = PolicySpec{};
  params.policy->wealth_threshold_frac = 1.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
}
