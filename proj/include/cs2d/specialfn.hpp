#pragma once

// Special functions and quadrature primitives: generalized Laguerre
// polynomials, log-factorials, exact binomials and Gauss-Laguerre rules.

#include <cstdint>
#include <vector>

namespace cs2d::specialfn {

/// Gauss-Laguerre rule for the weight e^{-u} on [0, inf).
///
/// `log_weights` is always finite; `weights` underflows to zero for nodes
/// beyond roughly u = 745, which only happens for orders above ~190.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> log_weights;
  int order = 0;

  /// Weights with e^{u} folded back in, i.e. w_i * e^{u_i}. Use these when
  /// the integrand already carries the e^{-u} factor.
  [[nodiscard]] std::vector<double> scaled_weights() const;
};

inline constexpr int kMaxLaguerreDegree = 1'000'000;
inline constexpr int kMaxQuadratureOrder = 512;

/// L_n^mu(x) by upward three-term recurrence in n.
double laguerre(int n, double mu, double x);

/// L_n^mu(x) together with L_{n-1}^mu(x), sharing a common scale so that
/// value = mantissa * exp(log_scale). Large arguments (x ~ 10^3) overflow the
/// plain recurrence; this form does not.
struct ScaledLaguerre {
  double current = 0.0;   // mantissa of L_n
  double previous = 0.0;  // mantissa of L_{n-1} (0 for n == 0)
  double log_scale = 0.0;
};
ScaledLaguerre laguerre_scaled(int n, double mu, double x);

/// ln(n!). Exact integer product for n <= 20, std::lgamma beyond.
double log_factorial(std::int64_t n);

/// binomial(top, k) for integer top of either sign. Negative top uses the
/// falling-factorial definition top(top-1)...(top-k+1)/k!; k > top >= 0
/// gives 0.
double binomial(std::int64_t top, std::int64_t k);

QuadratureRule gauss_laguerre(int order);

struct LaguerreIntegralCheck {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// Closed form (-1)^n Gamma(lambda+1) binomial(lambda-mu, n) versus the
/// Gauss-Laguerre value of 2 int_0^inf x^{2 lambda+1} e^{-x^2} L_n^mu(x^2) dx.
LaguerreIntegralCheck verify_laguerre_integral(int n, int mu, int lambda);

}  // namespace cs2d::specialfn
