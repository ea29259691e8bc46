#include "cs2d/specialfn.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cs2d::specialfn {

namespace {

constexpr double kRescaleThreshold = 1e150;
constexpr double kNewtonTolerance = 1e-14;
constexpr double kNewtonStallTolerance = 1e-11;
constexpr int kNewtonMaxIterations = 100;

void check_degree(int n) {
  if (n < 0) {
    throw std::invalid_argument("laguerre: negative degree " + std::to_string(n));
  }
  if (n > kMaxLaguerreDegree) {
    throw std::invalid_argument("laguerre: degree " + std::to_string(n) +
                                " exceeds recurrence depth guard");
  }
}

}  // namespace

std::vector<double> QuadratureRule::scaled_weights() const {
  std::vector<double> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out[i] = std::exp(log_weights[i] + nodes[i]);
  }
  return out;
}

double laguerre(int n, double mu, double x) {
  check_degree(n);
  if (!std::isfinite(x) || !std::isfinite(mu)) {
    throw std::invalid_argument("laguerre: non-finite argument");
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + mu - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + mu - x) * curr - (k + mu) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

ScaledLaguerre laguerre_scaled(int n, double mu, double x) {
  check_degree(n);
  if (!std::isfinite(x) || !std::isfinite(mu)) {
    throw std::invalid_argument("laguerre: non-finite argument");
  }
  ScaledLaguerre out{1.0, 0.0, 0.0};
  if (n == 0) return out;
  double prev = 1.0;
  double curr = 1.0 + mu - x;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + mu - x) * curr - (k + mu) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
    if (std::abs(curr) > kRescaleThreshold) {
      curr /= kRescaleThreshold;
      prev /= kRescaleThreshold;
      log_scale += std::log(kRescaleThreshold);
    }
  }
  out.current = curr;
  out.previous = prev;
  out.log_scale = log_scale;
  return out;
}

double log_factorial(std::int64_t n) {
  if (n < 0) {
    throw std::invalid_argument("log_factorial: negative argument " + std::to_string(n));
  }
  if (n <= 20) {
    std::uint64_t product = 1;
    for (std::int64_t k = 2; k <= n; ++k) product *= static_cast<std::uint64_t>(k);
    return std::log(static_cast<double>(product));
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial(std::int64_t top, std::int64_t k) {
  if (k < 0) return 0.0;
  if (top < 0) {
    // binomial(-a, k) = (-1)^k binomial(a + k - 1, k)
    const double magnitude = binomial(k - top - 1, k);
    return (k % 2 == 0) ? magnitude : -magnitude;
  }
  if (k > top) return 0.0;
  k = std::min(k, top - k);
  double result = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    // Each partial product is itself a binomial coefficient, so it stays integral.
    result = result * static_cast<double>(top - k + i) / static_cast<double>(i);
  }
  return std::round(result);
}

namespace {

// log of w = 1 / sum_{k<n} L_k(x)^2. Unlike x / (n L_{n-1})^2 this is flat in
// x near a node, so roundoff in the node barely reaches the weight.
double log_christoffel_weight(int n, double x) {
  double prev = 0.0;
  double cur = 1.0;
  double sum = 1.0;
  double log_scale = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    sum += cur * cur;
    if (std::abs(cur) > kRescaleThreshold) {
      cur /= kRescaleThreshold;
      prev /= kRescaleThreshold;
      sum /= kRescaleThreshold * kRescaleThreshold;
      log_scale += std::log(kRescaleThreshold);
    }
  }
  return -(std::log(sum) + 2.0 * log_scale);
}

}  // namespace

QuadratureRule gauss_laguerre(int order) {
  if (order < 1 || order > kMaxQuadratureOrder) {
    throw std::invalid_argument("gauss_laguerre: order " + std::to_string(order) +
                                " outside [1, " + std::to_string(kMaxQuadratureOrder) + "]");
  }
  QuadratureRule rule;
  rule.order = order;

  // Initial guesses: eigenvalues of the Jacobi matrix of the Laguerre
  // recurrence. Polished below by Newton on L_order itself.
  Eigen::VectorXd diag(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int k = 0; k < order; ++k) diag[k] = 2.0 * k + 1.0;
  for (int k = 1; k < order; ++k) sub[k - 1] = static_cast<double>(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_laguerre: Jacobi eigensolve failed for order " +
                             std::to_string(order));
  }

  rule.nodes.resize(order);
  rule.log_weights.resize(order);
  rule.weights.resize(order);
  const double n = static_cast<double>(order);
  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()[i];
    bool converged = false;
    ScaledLaguerre p{};
    double last_step = INFINITY;
    for (int iter = 0; iter < kNewtonMaxIterations; ++iter) {
      p = laguerre_scaled(order, 0.0, x);
      // L_n'(x) = n (L_n - L_{n-1}) / x
      const double step = x * p.current / (n * (p.current - p.previous));
      x -= step;
      const double size = std::max(1.0, x);
      // Stop at tolerance, or once steps stall at the roundoff floor of the recurrence.
      if (std::abs(step) <= kNewtonTolerance * size ||
          (std::abs(step) >= 0.5 * last_step && std::abs(step) <= kNewtonStallTolerance * size)) {
        converged = true;
        break;
      }
      last_step = std::abs(step);
    }
    if (!converged || !(x > 0.0)) {
      throw std::runtime_error("gauss_laguerre: Newton iteration failed to converge for order " +
                               std::to_string(order) + " (node " + std::to_string(i) + ")");
    }
    rule.nodes[i] = x;
    rule.log_weights[i] = log_christoffel_weight(order, x);
    rule.weights[i] = std::exp(rule.log_weights[i]);
  }
  for (int i = 1; i < order; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) {
      throw std::runtime_error("gauss_laguerre: nodes collapsed for order " +
                               std::to_string(order));
    }
  }
  return rule;
}

LaguerreIntegralCheck verify_laguerre_integral(int n, int mu, int lambda) {
  if (n < 0 || n > 10 || mu < 0 || mu > 8 || lambda < 0 || lambda > 8) {
    throw std::invalid_argument("verify_laguerre_integral: (n, mu, lambda) outside desk range");
  }
  LaguerreIntegralCheck out;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  double factorial = 1.0;
  for (int k = 2; k <= lambda; ++k) factorial *= k;
  out.closed_form = sign * factorial * binomial(lambda - mu, n);

  // After u = x^2 the integrand is u^lambda L_n^mu(u) against e^{-u}: a
  // polynomial of degree lambda + n, integrated exactly.
  const auto rule = gauss_laguerre((lambda + n) / 2 + 2);
  double sum = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double u = rule.nodes[i];
    sum += rule.weights[i] * std::pow(u, lambda) * laguerre(n, mu, u);
  }
  out.quadrature = sum;
  return out;
}

}  // namespace cs2d::specialfn
