#include <doctest.h>

#include <cmath>
#include <vector>

#include "randflight/rates.hpp"

using namespace randflight;

TEST_CASE("b_limit") {
  CHECK(b_limit(Model::X, 2, 2.0) == 1.0);
  CHECK(b_limit(Model::Y, 4, 2.0) == 2.0);
  CHECK(b_limit(Model::X, 5, 1.0) == 2.0);
  CHECK_THROWS_AS(b_limit(Model::X, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(b_limit(Model::Y, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(b_limit(Model::Z, 2, 1.0), std::invalid_argument);
}

TEST_CASE("conditional rate values") {
  CHECK(conditional_rate(Model::X, 2, 1.0, 1.0, 0.0) == 0.0);
  CHECK(conditional_rate(Model::X, 2, 1.0, 1.0, 0.5) ==
        doctest::Approx(0.1438410362258905).epsilon(1e-12));
  // J_4(r; w) = 2 I_2(r; w).
  CHECK(conditional_rate(Model::Y, 4, 1.0, 1.0, 0.5) ==
        doctest::Approx(0.2876820724517809).epsilon(1e-12));
  CHECK(conditional_rate(Model::X, 2, 1.0, 1.0, 1.0) == kRateInfinity);
  CHECK(conditional_rate(Model::X, 2, 1.0, 1.0, 2.0) == kRateInfinity);
}

TEST_CASE("J4(r;w) = 2 I2(r;w) bitwise on a dense grid") {
  for (double w : {0.5, 1.0, 2.0}) {
    CAPTURE(w);
    for (int i = 0; i < 1000; ++i) {
      const double r = 0.999 * i / 999.0;
      const double j4 = conditional_rate(Model::Y, 4, 1.0, w, r);
      const double i2 = conditional_rate(Model::X, 2, 1.0, w, r);
      CHECK(j4 == 2.0 * i2);
    }
  }
}

TEST_CASE("standard rate values") {
  CHECK(standard_rate_2d(1.0, 1.0, 1.0) == 1.0);  // value lambda at r = c
  CHECK(standard_rate_2d(1.0, 1.0, 0.5) == doctest::Approx(0.1339745962155614).epsilon(1e-12));
  CHECK(standard_rate_2d(1.0, 1.0, 1.2) == kRateInfinity);
  CHECK(standard_rate_4d(1.0, 1.0, 0.5) == 0.25);
  CHECK(standard_rate_4d(1.0, 1.0, 1.0) == 1.0);
  CHECK(standard_rate_4d(3.0, 2.0, 1.0) == 0.75);
  CHECK(standard_rate_4d(1.0, 1.0, 1.0 + 1e-12) == kRateInfinity);
}

TEST_CASE("brownian limit") {
  CHECK(brownian_limit_rate(1.0, 0.0) == 0.0);
  CHECK(brownian_limit_rate(1.0, 1.0) == 0.5);
  // standard_rate_2d(lambda, sqrt(lambda sigma^2), r) -> r^2/(2 sigma^2).
  const double lambda = 1e4, sigma2 = 1.0;
  const double c = std::sqrt(lambda * sigma2);
  CHECK(std::abs(standard_rate_2d(lambda, c, 0.5) - brownian_limit_rate(sigma2, 0.5)) < 1e-4);
}

TEST_CASE("rates are strictly increasing on the open support") {
  const std::vector<RateFunction> fns = {
      RateFunction::conditional(Model::X, 2, 1.0, 1.0),
      RateFunction::conditional(Model::Y, 4, 1.0, 0.6),
      RateFunction::standard(2, 1.0, 1.0),
      RateFunction::standard(4, 2.0, 1.0),
      RateFunction::brownian(0.5),
  };
  for (const RateFunction& f : fns) {
    CAPTURE(rate_kind_name(f.kind));
    CHECK(f(0.0) == 0.0);
    double prev = 0.0;
    for (int i = 1; i <= 99; ++i) {
      const double v = f(i / 100.0);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("conditional rate is linear in w") {
  for (double r : {0.1, 0.5, 0.9}) {
    const double a = conditional_rate(Model::X, 3, 1.0, 0.7, r);
    const double b = conditional_rate(Model::X, 3, 1.0, 1.3, r);
    const double ab = conditional_rate(Model::X, 3, 1.0, 2.0, r);
    CHECK(a + b == doctest::Approx(ab).epsilon(1e-13));
  }
}

TEST_CASE("conditional rates blow up at the rim where standard ones stay at lambda") {
  const double near = 1.0 - 1e-9;
  CHECK(conditional_rate(Model::X, 2, 1.0, 1.0, near) > 9.0);
  CHECK(conditional_rate(Model::X, 2, 1.0, 1.0, 1.0) == kRateInfinity);
  CHECK(standard_rate_2d(1.0, 1.0, 1.0) == 1.0);
  CHECK(standard_rate_4d(1.0, 1.0, 1.0) == 1.0);
}

TEST_CASE("crossing radius for w in (0, lambda)") {
  // Frozen from a high-precision bisection of -0.6 log(1-u) = u:
  // u* = 0.675756733581..., gamma = sqrt(u*) = 0.822044240647...
  const CrossingRadius cr = crossing_radius_4d(1.0, 1.0, 0.6);
  CHECK(cr.xi == doctest::Approx(std::sqrt(0.4)).epsilon(1e-14));
  CHECK(cr.gamma == doctest::Approx(0.8220442406470661).epsilon(1e-9));
  CHECK(cr.gamma > cr.xi);
  CHECK(cr.gamma < 1.0);

  // Dominance pattern around the crossing.
  for (double r = 0.05; r < cr.gamma - 0.01; r += 0.05) {
    CHECK(conditional_rate(Model::Y, 4, 1.0, 0.6, r) < standard_rate_4d(1.0, 1.0, r));
  }
  for (double r = cr.gamma + 0.01; r <= 1.0; r += 0.05) {
    CHECK(conditional_rate(Model::Y, 4, 1.0, 0.6, r) > standard_rate_4d(1.0, 1.0, r));
  }
}

TEST_CASE("crossing radius stays in (xi, 1) as w approaches lambda") {
  const CrossingRadius cr = crossing_radius_4d(1.0, 1.0, 0.999);
  CHECK(cr.xi == doctest::Approx(0.0316227766016838).epsilon(1e-12));
  CHECK(cr.gamma > cr.xi);
  CHECK(cr.gamma < 1.0);
  CHECK(cr.gamma == doctest::Approx(0.0447139028827428).epsilon(1e-6));
}

TEST_CASE("no crossing for w >= lambda; conditional dominates strictly") {
  CHECK_THROWS_AS(crossing_radius_4d(1.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(crossing_radius_4d(1.0, 1.0, 1.0), std::invalid_argument);
  for (double w : {1.0, 1.5}) {
    for (int i = 1; i <= 100; ++i) {
      const double r = i / 100.0;
      CHECK(conditional_rate(Model::Y, 4, 1.0, w, r) > standard_rate_4d(1.0, 1.0, r));
    }
  }
}

TEST_CASE("rate_inf_over_tail") {
  const RateFunction std2 = RateFunction::standard(2, 1.0, 1.0);
  CHECK(rate_inf_over_tail(std2, 0.5) == doctest::Approx(0.1339745962155614).epsilon(1e-12));
  CHECK(rate_inf_over_tail(std2, 0.0) == 0.0);
  const RateFunction condx = RateFunction::conditional(Model::X, 2, 1.0, 1.0);
  CHECK(rate_inf_over_tail(condx, 0.0) == 0.0);
  CHECK(rate_inf_over_tail(condx, 1.5) == kRateInfinity);
}

TEST_CASE("compare_rates: J4 >= I2 with equality exactly at 0 and c") {
  const RateFunction i2 = RateFunction::standard(2, 1.0, 1.0);
  const RateFunction j4 = RateFunction::standard(4, 1.0, 1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(i / 1000.0);
  const RateComparison cmp = compare_rates(j4, i2, grid);
  REQUIRE(cmp.rows.size() == grid.size());
  for (const RateComparisonRow& row : cmp.rows) {
    if (row.r == 0.0 || row.r == 1.0) {
      CHECK(row.sign == 0);
    } else {
      CHECK(row.sign == 1);
    }
  }
  CHECK(cmp.sign_change_radii.empty());
}

TEST_CASE("compare_rates: sign change sits at the crossing radius") {
  const RateFunction cond = RateFunction::conditional(Model::Y, 4, 1.0, 0.6);
  const RateFunction stdr = RateFunction::standard(4, 1.0, 1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  const RateComparison cmp = compare_rates(cond, stdr, grid);
  REQUIRE(cmp.sign_change_radii.size() == 1);
  const double gamma = crossing_radius_4d(1.0, 1.0, 0.6).gamma;
  CHECK(cmp.sign_change_radii[0] > gamma);
  CHECK(cmp.sign_change_radii[0] - 0.01 < gamma);
}

TEST_CASE("compare_rates requires a shared speed") {
  const RateFunction a = RateFunction::standard(2, 1.0, 1.0);
  const RateFunction b = RateFunction::standard(4, 1.0, 2.0);
  const std::vector<double> grid = {0.5};
  CHECK_THROWS_AS(compare_rates(a, b, grid), std::invalid_argument);
}

TEST_CASE("scaled-family ordering: larger rate near 0 means larger tail infimum") {
  const RateFunction fast = RateFunction::conditional(Model::X, 2, 1.0, 2.0);
  const RateFunction slow = RateFunction::standard(2, 1.0, 1.0);
  // I_2(r; 2) ~ r^2 vs I_2(r) ~ r^2/2 near 0: fast dominates.
  for (double r : {0.05, 0.1, 0.2, 0.3}) {
    CHECK(rate_inf_over_tail(fast, r) > rate_inf_over_tail(slow, r));
  }
}
