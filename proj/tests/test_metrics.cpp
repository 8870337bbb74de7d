#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "glv/metrics.hpp"
#include "glv/rng.hpp"
#include "test_helpers.hpp"

using namespace glv;

TEST_CASE("gini of perfect equality is zero") {
  CHECK(gini(std::vector<double>{5, 5, 5, 5}) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("gini matches the brute-force pairwise oracle") {
  const std::vector<double> concentrated{0, 0, 0, 10};
  CHECK(oracle::gini_brute_force(concentrated) == Catch::Approx(0.75).margin(1e-12));
  CHECK(gini(concentrated) == Catch::Approx(0.75).margin(1e-12));

  // a few irregular vectors
  for (std::uint64_t s = 0; s < 5; ++s) {
    std::vector<double> values;
    for (std::int64_t i = 0; i < 200; ++i) {
      values.push_back(sample_uniform01({s, i, 0, Channel::TraitInit}) * 100.0);
    }
    CHECK(gini(values) == Catch::Approx(oracle::gini_brute_force(values)).margin(1e-10));
  }
}

TEST_CASE("gini approaches one in the condensation limit") {
  for (std::size_t n : {4u, 100u, 10000u}) {
    std::vector<double> values(n, 0.0);
    values.back() = 1.0;
    CHECK(gini(values) ==
          Catch::Approx((static_cast<double>(n) - 1.0) / static_cast<double>(n)).margin(1e-12));
  }
}

TEST_CASE("gini is scale invariant to 1e-12") {
  std::vector<double> values;
  for (std::int64_t i = 0; i < 2000; ++i) {
    values.push_back(0.01 + sample_uniform01({77, i, 0, Channel::TraitInit}));
  }
  const double base = gini(values);
  for (double scale : {1e-7, 0.3, 7.0, 1e9}) {
    std::vector<double> scaled = values;
    for (auto& v : scaled) v *= scale;
    CHECK(std::fabs(gini(scaled) - base) <= 1e-12);
  }
}

TEST_CASE("gini input validation") {
  CHECK_THROWS_AS(gini(std::vector<double>{0.0, 0.0, 0.0}), AllZero);
  CHECK_THROWS_AS(gini(std::vector<double>{1.0}), TooFewAgents);
}

TEST_CASE("decile ratio on simple vectors") {
  CHECK(decile_ratio(std::vector<double>(50, 3.0)) == Catch::Approx(1.0));

  std::vector<double> ramp;
  for (int i = 1; i <= 100; ++i) ramp.push_back(i);
  // mean(91..100) / mean(1..10) = 95.5 / 5.5
  CHECK(decile_ratio(ramp) == Catch::Approx(95.5 / 5.5).margin(1e-12));

  std::vector<double> with_zeros(100, 1.0);
  for (int i = 0; i < 10; ++i) with_zeros[i] = 0.0;
  CHECK(std::isinf(decile_ratio(with_zeros)));

  CHECK_THROWS_AS(decile_ratio(std::vector<double>{1, 2, 3}), TooFewAgents);
}

TEST_CASE("poverty ratio counts values under half the mean") {
  CHECK(poverty_ratio(std::vector<double>(20, 4.0)) == 0.0);
  // mean 3, half 1.5, three of four below
  CHECK(poverty_ratio(std::vector<double>{1, 1, 1, 9}) == Catch::Approx(0.75));
  CHECK_THROWS_AS(poverty_ratio(std::vector<double>{}), EmptyInput);
}

TEST_CASE("poverty and decile ratios are permutation and scale invariant") {
  std::vector<double> values;
  for (std::int64_t i = 0; i < 500; ++i) {
    values.push_back(0.1 + sample_uniform01({13, i, 0, Channel::TraitInit}) * 9.0);
  }
  std::vector<double> shuffled = values;
  std::mt19937 gen(4);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  for (auto& v : shuffled) v *= 123.0;
  CHECK(decile_ratio(shuffled) == Catch::Approx(decile_ratio(values)).epsilon(1e-12));
  CHECK(poverty_ratio(shuffled) == Catch::Approx(poverty_ratio(values)).epsilon(1e-12));
}

TEST_CASE("hill alpha closed form on a two-point tail") {
  // tail {m*e, m}: sum of logs is exactly 1, alpha = 1 + 2/1 = 3
  const double m = 0.37;
  CHECK(hill_alpha(std::vector<double>{m * std::exp(1.0), m}, 2) ==
        Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("hill alpha is consistent on Pareto oracle samples") {
  std::mt19937 gen(202);
  // pdf exponent 2.0, so the estimator should land within +-0.05 of 2.0
  const auto sample = oracle::pareto_sample(gen, 2.0, 1.0, 100000);
  CHECK(hill_alpha(sample, 10000) == Catch::Approx(2.0).margin(0.05));

  // bias within 2 sigma for n_tail = 1000: sd ~ (alpha-1)/sqrt(k)
  const auto sample3 = oracle::pareto_sample(gen, 3.0, 5.0, 50000);
  const double sd = 2.0 / std::sqrt(1000.0);
  CHECK(hill_alpha(sample3, 1000) == Catch::Approx(3.0).margin(2.0 * sd));
}

TEST_CASE("hill alpha is scale invariant") {
  std::mt19937 gen(7);
  const auto sample = oracle::pareto_sample(gen, 2.5, 1.0, 20000);
  const double base = hill_alpha(sample, 800);
  std::vector<double> scaled = sample;
  for (auto& v : scaled) v *= 1e4;
  CHECK(hill_alpha(scaled, 800) == Catch::Approx(base).epsilon(1e-12));
}

TEST_CASE("hill alpha error paths") {
  CHECK_THROWS_AS(hill_alpha(std::vector<double>(100, 2.0), 50), DegenerateTail);
  CHECK_THROWS_AS(hill_alpha(std::vector<double>{1.0, 2.0, 3.0}, 10), TooFewAgents);
  CHECK_THROWS_AS(hill_alpha(std::vector<double>{1.0, 2.0}, 1), TooFewAgents);
}

TEST_CASE("default tail size preserves the 4% fraction") {
  CHECK(default_n_tail(10000) == 400);
  CHECK(default_n_tail(5000) == 200);
  CHECK(default_n_tail(250) == 10);
}

TEST_CASE("metrics report omits the tail exponent when the tail is too small") {
  std::vector<double> small;
  for (std::int64_t i = 0; i < 50; ++i) {
    small.push_back(1.0 + sample_uniform01({3, i, 0, Channel::TraitInit}));
  }
  const MetricsReport report = compute_metrics(small);
  CHECK_FALSE(report.hill_alpha.has_value());
  CHECK(report.gini > 0.0);
}
