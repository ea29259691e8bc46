#include "cs2d/expansion.hpp"

#include "cs2d/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cs2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAutoTailTarget = 1e-13;
constexpr int kAutoMargin = 4;
constexpr double kSeriesCutoff = 1e-17;

// base^power as (log|.|, sign) with 0^0 = 1; `zero` marks an exact zero.
struct LogTerm {
  double log_magnitude = 0.0;
  double sign = 1.0;
  bool zero = false;
};

LogTerm log_power(double base, int power) {
  if (power == 0) return {};
  if (base == 0.0) return {0.0, 1.0, true};
  return {power * std::log(std::abs(base)), (base < 0.0 && power % 2 != 0) ? -1.0 : 1.0, false};
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double CoefficientTable::sum_squares() const {
  CompensatedSum acc;
  for (const auto& [mode, c] : entries) acc.add(c * c);
  return acc.value();
}

double CoefficientTable::at(const ModeIndex& mode) const {
  const auto it = entries.find(mode);
  return it == entries.end() ? 0.0 : it->second;
}

double coeff_circular(double xi0, const ModeIndex& mode) {
  if (mode.m < 0 || mode.n_r > 0) return 0.0;
  const LogTerm power = log_power(xi0, mode.m);
  if (power.zero) return 0.0;
  return std::exp(power.log_magnitude - 0.5 * xi0 * xi0 -
                  0.5 * specialfn::log_factorial(mode.m));
}

double coeff_elliptic(const PacketParams& params, const ModeIndex& mode) {
  // Advanced chirality is the m -> -m mirror of the retarded expansion.
  const int m = params.chirality == Chirality::retarded ? mode.m : -mode.m;
  const int n_r = mode.n_r;
  const int abs_m = m < 0 ? -m : m;
  const double a = params.a();
  const double b = params.b();

  const int a_power = m >= 0 ? n_r : abs_m + n_r;
  const int b_power = m >= 0 ? m + n_r : n_r;
  const LogTerm a_term = log_power(a, a_power);
  const LogTerm b_term = log_power(b, b_power);
  if (a_term.zero || b_term.zero) return 0.0;

  const double log_magnitude =
      -0.5 * (specialfn::log_factorial(n_r) + specialfn::log_factorial(abs_m + n_r)) -
      0.5 * params.xi0 * params.xi0 + a * b + a_term.log_magnitude + b_term.log_magnitude;
  const double sign = (n_r % 2 == 0 ? 1.0 : -1.0) * a_term.sign * b_term.sign;
  return sign * std::exp(log_magnitude);
}

int recommended_radial_order(const PacketParams& params, const ModeIndex& mode) {
  // The e^{xi0 rho} growth of the packet needs nodes out to rho ~ 2 max(xi0, eta0) + 8.
  const double amp = std::max(params.xi0, params.eta0);
  const int base = mode.principal() / 2 + mode.abs_m() + 8;
  return std::clamp(std::max(base, static_cast<int>(std::ceil(40.0 + 20.0 * amp))), 1,
                    specialfn::kMaxQuadratureOrder);
}

int recommended_angular_points(const PacketParams& params, const ModeIndex& mode) {
  const double amp = std::max(params.xi0, params.eta0);
  return 4 * mode.abs_m() + 32 + static_cast<int>(std::ceil(16.0 * amp));
}

complex coeff_quadrature(const PacketParams& params, const ModeIndex& mode, int radial_order,
                         int angular_points, std::string* warning) {
  if (radial_order < 1 || angular_points < 1) {
    throw std::invalid_argument("coeff_quadrature: quadrature sizes must be positive");
  }
  if (warning != nullptr) {
    warning->clear();
    if (radial_order < recommended_radial_order(params, mode) ||
        angular_points < recommended_angular_points(params, mode)) {
      *warning = "coeff_quadrature: quadrature sizes below recommended (radial " +
                 std::to_string(recommended_radial_order(params, mode)) + ", angular " +
                 std::to_string(recommended_angular_points(params, mode)) +
                 "); accuracy degraded";
    }
  }

  const auto rule = specialfn::gauss_laguerre(radial_order);
  // The integrand below carries its own e^{-u}; fold it back out of the weights.
  const auto weights = rule.scaled_weights();
  const double dphi = kTwoPi / angular_points;

  complex total{};
  for (int i = 0; i < rule.order; ++i) {
    const double rho = std::sqrt(rule.nodes[i]);
    complex ring{};
    for (int j = 0; j < angular_points; ++j) {
      const double phi = j * dphi;
      const double xi = rho * std::cos(phi);
      const double eta = rho * std::sin(phi);
      ring += initial_state(params, xi, eta) * std::conj(eigenstate(mode, rho, phi));
    }
    total += weights[i] * ring * dphi;
  }
  // rho drho = du / 2
  return 0.5 * total;
}

complex angular_integral(int m, const PacketParams& params, double rho) {
  if (params.chirality == Chirality::advanced) m = -m;
  const int abs_m = m < 0 ? -m : m;
  // For m < 0 the roles of A and B swap.
  const double lead = m >= 0 ? params.b() : params.a();
  const double other = m >= 0 ? params.a() : params.b();

  const LogTerm first = log_power(lead * rho, abs_m);
  if (first.zero) return {0.0, 0.0};
  double term = first.sign * std::exp(first.log_magnitude - specialfn::log_factorial(abs_m));
  const double ratio_base = lead * other * rho * rho;

  double sum = term;
  for (int k = 0; k < 100000; ++k) {
    term *= ratio_base / ((k + 1.0) * (k + abs_m + 1.0));
    sum += term;
    const double ratio = std::abs(ratio_base) / ((k + 2.0) * (k + abs_m + 2.0));
    if (ratio < 1.0 && std::abs(term) <= kSeriesCutoff * std::abs(sum)) break;
    if (term == 0.0) break;
  }
  return {kTwoPi * sum, 0.0};
}

int auto_nmax(const PacketParams& params) {
  const double s = params.mean_principal();
  if (s == 0.0) return kAutoMargin;
  auto log_pmf = [s](int n) {
    return -s + n * std::log(s) - specialfn::log_factorial(n);
  };
  for (int cut = 0; cut <= kMaxTableNmax; ++cut) {
    // Upper tail summed directly; terms decay geometrically once n > s.
    double tail = 0.0;
    for (int n = cut + 1;; ++n) {
      const double p = std::exp(log_pmf(n));
      tail += p;
      if (n > s && p < 1e-30) break;
      if (tail >= kAutoTailTarget && n > s) break;
    }
    if (tail < kAutoTailTarget) return cut + kAutoMargin;
  }
  throw std::invalid_argument("auto_nmax: packet too large for the table-size guard");
}

CoefficientTable build_table(const PacketParams& params, std::optional<int> n_max) {
  CoefficientTable table;
  table.params = params;
  table.n_max = n_max.has_value() ? *n_max : auto_nmax(params);
  if (table.n_max < 0) {
    throw std::invalid_argument("build_table: negative n_max");
  }
  if (table.n_max > kMaxTableNmax) {
    throw std::invalid_argument("build_table: n_max " + std::to_string(table.n_max) +
                                " exceeds table-size guard " + std::to_string(kMaxTableNmax));
  }
  for (int principal = 0; principal <= table.n_max; ++principal) {
    for (const auto& mode : modes_in_shell(principal)) {
      const double c = coeff_elliptic(params, mode);
      if (c != 0.0) table.entries.emplace(mode, c);
    }
  }
  table.tail_mass = std::max(0.0, 1.0 - table.sum_squares());
  return table;
}

}  // namespace cs2d
