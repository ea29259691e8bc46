#include <doctest.h>

#include "cs2d/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace cs2d::specialfn;

namespace {

// Explicit series L_n^mu(x) = sum_k (-1)^k binom(n+mu, n-k) x^k / k!, integer mu.
double laguerre_series(int n, int mu, double x) {
  double sum = 0.0;
  double x_pow_over_fact = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) x_pow_over_fact *= x / k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(n + mu, n - k) * x_pow_over_fact;
  }
  return sum;
}

}  // namespace

TEST_CASE("laguerre: low-degree values") {
  CHECK(laguerre(0, 3.5, 7.2) == 1.0);
  CHECK(laguerre(1, 0.0, 1.0) == 0.0);
  // 3 - 3x + x^2/2 at x = 2
  CHECK(laguerre(2, 1.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("laguerre: matches explicit series") {
  for (int n = 0; n <= 12; ++n) {
    for (int mu = 0; mu <= 5; ++mu) {
      for (double x : {0.0, 0.3, 1.0, 2.5, 7.0, 11.0}) {
        const double want = laguerre_series(n, mu, x);
        // the alternating series loses digits to cancellation at large x
        const double scale = std::max(1.0, laguerre_series(n, mu, -x));
        CHECK(std::abs(laguerre(n, mu, x) - want) <= 1e-14 * scale);
      }
    }
  }
  // value at the origin is binom(n + mu, n)
  CHECK(laguerre(7, 3, 0.0) == doctest::Approx(120.0));
}

TEST_CASE("laguerre: recurrence consistency property") {
  double worst = 0.0;
  for (int n = 1; n < 50; ++n) {
    for (int mu = 0; mu <= 6; ++mu) {
      for (int step = 0; step <= 50; ++step) {
        const double x = step;
        const double lp = laguerre(n + 1, mu, x);
        const double l = laguerre(n, mu, x);
        const double lm = laguerre(n - 1, mu, x);
        const double t1 = (n + 1) * lp;
        const double t2 = (2.0 * n + mu + 1 - x) * l;
        const double t3 = (n + mu) * lm;
        const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), 1e-300});
        worst = std::max(worst, std::abs(t1 - t2 + t3) / scale);
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("laguerre: scaled form agrees and survives large arguments") {
  for (int n : {1, 5, 40}) {
    for (double x : {0.5, 10.0, 60.0}) {
      const auto s = laguerre_scaled(n, 0.0, x);
      CHECK(s.current * std::exp(s.log_scale) ==
            doctest::Approx(laguerre(n, 0.0, x)).epsilon(1e-12));
    }
  }
  const auto big = laguerre_scaled(512, 0.0, 1900.0);
  CHECK(std::isfinite(big.current));
  CHECK(big.log_scale > 0.0);
}

TEST_CASE("laguerre: rejects bad input") {
  CHECK_THROWS_AS(laguerre(-1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(2, 0.0, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(2, 0.0, INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(laguerre(kMaxLaguerreDegree + 1, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("log_factorial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)).epsilon(1e-15));
  CHECK(log_factorial(10) == doctest::Approx(15.104412573).epsilon(1e-10));
  // crossover to lgamma stays continuous and monotone
  double prev = -1.0;
  for (int n = 0; n <= 200; ++n) {
    const double v = log_factorial(n);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(log_factorial(21) - log_factorial(20) == doctest::Approx(std::log(21.0)).epsilon(1e-13));
  CHECK_THROWS_AS(log_factorial(-3), std::invalid_argument);
}

TEST_CASE("binomial: exact and generalized") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(3, 4) == 0.0);
  CHECK(binomial(0, 1) == 0.0);
  CHECK(binomial(40, 20) == 137846528820.0);
  CHECK(binomial(-3, 2) == 6.0);   // (-3)(-4)/2
  CHECK(binomial(-1, 3) == -1.0);
  CHECK(binomial(-2, 3) == -4.0);  // (-2)(-3)(-4)/6
  CHECK(binomial(7, -1) == 0.0);
}

TEST_CASE("gauss_laguerre: small orders") {
  const auto one = gauss_laguerre(1);
  REQUIRE(one.nodes.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto two = gauss_laguerre(2);
  const double r2 = std::sqrt(2.0);
  CHECK(two.nodes[0] == doctest::Approx(2.0 - r2).epsilon(1e-14));
  CHECK(two.nodes[1] == doctest::Approx(2.0 + r2).epsilon(1e-14));
  CHECK(two.weights[0] == doctest::Approx((2.0 + r2) / 4.0).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx((2.0 - r2) / 4.0).epsilon(1e-14));
}

TEST_CASE("gauss_laguerre: rule invariants and moment exactness") {
  for (int order : {2, 4, 8, 16, 32, 64, 128}) {
    const auto rule = gauss_laguerre(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    CHECK(rule.nodes.front() > 0.0);
    CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
    CHECK(std::adjacent_find(rule.nodes.begin(), rule.nodes.end()) == rule.nodes.end());
    double w0 = 0.0;
    double w1 = 0.0;
    for (int i = 0; i < order; ++i) {
      CHECK(rule.weights[i] > 0.0);
      w0 += rule.weights[i];
      w1 += rule.weights[i] * rule.nodes[i];
    }
    CHECK(std::abs(w0 - 1.0) <= 1e-13);
    CHECK(std::abs(w1 - 1.0) <= 1e-12);
    // int u^3 e^{-u} = 6
    double cube = 0.0;
    for (int i = 0; i < order; ++i) cube += rule.weights[i] * std::pow(rule.nodes[i], 3);
    CHECK(std::abs(cube - 6.0) <= 1e-12 * 6.0);
  }
  for (int order : {2, 4, 8, 16, 32}) {
    const auto rule = gauss_laguerre(order);
    for (int p = 0; p <= 2 * order - 1; ++p) {
      double sum = 0.0;
      for (int i = 0; i < order; ++i) {
        sum += std::exp(rule.log_weights[i] + p * std::log(rule.nodes[i]));
      }
      const double exact = std::exp(log_factorial(p));
      CHECK_MESSAGE(std::abs(sum - exact) <= 1e-11 * exact, "order ", order, " p ", p);
    }
  }
}

TEST_CASE("gauss_laguerre: orthogonality under quadrature") {
  for (int mu = 0; mu <= 3; ++mu) {
    for (int j = 0; j <= 10; ++j) {
      for (int k = 0; k <= 10; ++k) {
        const auto rule = gauss_laguerre(j + k + mu + 2);
        double sum = 0.0;
        for (int i = 0; i < rule.order; ++i) {
          const double u = rule.nodes[i];
          sum += rule.weights[i] * std::pow(u, mu) * laguerre(j, mu, u) * laguerre(k, mu, u);
        }
        const double want = j == k ? std::exp(std::lgamma(mu + j + 1.0) - log_factorial(j)) : 0.0;
        CHECK_MESSAGE(std::abs(sum - want) <= 1e-10 * std::max(1.0, want), "mu ", mu, " j ", j,
                      " k ", k);
      }
    }
  }
}

TEST_CASE("gauss_laguerre: high orders converge and keep log-weights finite") {
  const auto rule = gauss_laguerre(kMaxQuadratureOrder);
  CHECK(rule.nodes.size() == static_cast<std::size_t>(kMaxQuadratureOrder));
  CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
  double w0 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(std::isfinite(rule.log_weights[i]));
    w0 += rule.weights[i];
  }
  CHECK(std::abs(w0 - 1.0) <= 1e-13);
}

TEST_CASE("gauss_laguerre: order bounds") {
  CHECK_THROWS_AS(gauss_laguerre(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_laguerre(kMaxQuadratureOrder + 1), std::invalid_argument);
}

TEST_CASE("verify_laguerre_integral: examples") {
  auto r = verify_laguerre_integral(0, 0, 2);
  CHECK(r.closed_form == 2.0);
  CHECK(r.quadrature == doctest::Approx(2.0).epsilon(1e-12));

  r = verify_laguerre_integral(1, 3, 3);
  CHECK(r.closed_form == 0.0);
  CHECK(std::abs(r.quadrature) <= 1e-10);

  r = verify_laguerre_integral(2, 0, 2);
  CHECK(r.closed_form == 2.0);
  CHECK(r.quadrature == doctest::Approx(2.0).epsilon(1e-12));

  // mpmath quadrature: n=3, mu=1, lambda=5 -> -480; n=2, mu=4, lambda=1 -> 6
  CHECK(verify_laguerre_integral(3, 1, 5).closed_form == -480.0);
  CHECK(verify_laguerre_integral(2, 4, 1).closed_form == 6.0);
}

TEST_CASE("verify_laguerre_integral: full desk range") {
  for (int n = 0; n <= 10; ++n) {
    for (int mu = 0; mu <= 8; ++mu) {
      for (int lambda = 0; lambda <= 8; ++lambda) {
        const auto r = verify_laguerre_integral(n, mu, lambda);
        // the alternating moment series cancels; its absolute sum sets the scale
        double scale = 1.0;
        for (int k = 0; k <= n; ++k) {
          scale += binomial(n + mu, n - k) * std::exp(log_factorial(lambda + k) - log_factorial(k));
        }
        CHECK_MESSAGE(std::abs(r.closed_form - r.quadrature) <= 1e-13 * scale,
                      "n ", n, " mu ", mu, " lambda ", lambda);
      }
    }
  }
  CHECK_THROWS_AS(verify_laguerre_integral(11, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_laguerre_integral(0, 9, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_laguerre_integral(0, 0, -1), std::invalid_argument);
}
