#include "cs2d/states.hpp"

#include "cs2d/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cs2d {

namespace {

constexpr complex kI{0.0, 1.0};

}  // namespace

ModeIndex::ModeIndex(int m_, int n_r_) : m(m_), n_r(n_r_) {
  if (n_r_ < 0) {
    throw std::invalid_argument("ModeIndex: negative radial quantum number " +
                                std::to_string(n_r_));
  }
}

std::vector<ModeIndex> modes_in_shell(int principal) {
  std::vector<ModeIndex> out;
  if (principal < 0) return out;
  out.reserve(static_cast<std::size_t>(principal) + 1);
  for (int m = -principal; m <= principal; m += 2) {
    out.emplace_back(m, (principal - (m < 0 ? -m : m)) / 2);
  }
  return out;
}

PacketParams::PacketParams(double xi0_, double eta0_, Chirality c, double omega_)
    : xi0(xi0_), eta0(eta0_), chirality(c), omega(omega_) {
  if (!(xi0_ >= 0.0) || !(eta0_ >= 0.0) || !std::isfinite(xi0_) || !std::isfinite(eta0_)) {
    throw std::invalid_argument("PacketParams: amplitudes must be finite and non-negative");
  }
  if (!(omega_ > 0.0) || !std::isfinite(omega_)) {
    throw std::invalid_argument("PacketParams: omega must be positive");
  }
}

double PhysicalUnits::alpha() const { return std::sqrt(mass * omega / hbar); }

PacketParams to_dimensionless(const PhysicalUnits& units) {
  if (!(units.mass > 0.0) || !(units.omega > 0.0) || !(units.hbar > 0.0)) {
    throw std::invalid_argument("to_dimensionless: mass, omega and hbar must be positive");
  }
  if (!(units.x0 >= 0.0) || !(units.y0 >= 0.0)) {
    throw std::invalid_argument("to_dimensionless: x0 and y0 must be non-negative");
  }
  const double alpha = units.alpha();
  return PacketParams(alpha * units.x0, alpha * units.y0, Chirality::retarded, units.omega);
}

Grid2D::Grid2D(std::vector<double> xi_axis, std::vector<double> eta_axis)
    : xi_(std::move(xi_axis)), eta_(std::move(eta_axis)) {
  auto check_axis = [](const std::vector<double>& axis, const char* name) {
    if (axis.size() < 2) {
      throw std::invalid_argument(std::string("Grid2D: ") + name + " axis needs >= 2 points");
    }
    const double h = axis[1] - axis[0];
    if (!(h > 0.0)) {
      throw std::invalid_argument(std::string("Grid2D: ") + name + " spacing must be positive");
    }
    for (std::size_t k = 1; k < axis.size(); ++k) {
      if (std::abs((axis[k] - axis[k - 1]) - h) > 1e-9 * h) {
        throw std::invalid_argument(std::string("Grid2D: ") + name + " axis not uniform");
      }
    }
  };
  check_axis(xi_, "xi");
  check_axis(eta_, "eta");
  values_.assign(xi_.size() * eta_.size(), complex{});
}

Grid2D Grid2D::centered(double half_width, int points) {
  if (!(half_width > 0.0) || points < 2) {
    throw std::invalid_argument("Grid2D::centered: need half_width > 0 and >= 2 points");
  }
  std::vector<double> axis(static_cast<std::size_t>(points));
  const double center = 0.5 * (points - 1);
  const double h = half_width / center;
  for (int j = 0; j < points; ++j) axis[j] = h * (j - center);
  return Grid2D(axis, axis);
}

Grid2D Grid2D::for_packet(const PacketParams& params, int points) {
  return centered(std::max(params.xi0, params.eta0) + 6.0, points);
}

double Grid2D::half_span() const noexcept {
  auto reach = [](const std::vector<double>& a) {
    return std::min(std::abs(a.front()), std::abs(a.back()));
  };
  return std::min(reach(xi_), reach(eta_));
}

complex eigenstate(const ModeIndex& mode, double rho, double phi) {
  const int am = mode.abs_m();
  const double log_norm = 0.5 * (specialfn::log_factorial(mode.n_r) -
                                 specialfn::log_factorial(am + mode.n_r) -
                                 std::log(std::numbers::pi));
  const double u = rho * rho;
  const double radial = std::exp(log_norm - 0.5 * u) * std::pow(rho, am) *
                        specialfn::laguerre(mode.n_r, am, u);
  return radial * std::polar(1.0, mode.m * phi);
}

double energy(const ModeIndex& mode) noexcept { return mode.principal() + 1.0; }

complex coherent_1d(double xi0, double xi, double t) {
  const complex z = xi0 * std::exp(-kI * t);
  const complex exponent = -0.5 * kI * t - 0.5 * xi * xi + z * xi - 0.25 * (z * z + xi0 * xi0);
  return std::pow(std::numbers::pi, -0.25) * std::exp(exponent);
}

complex coherent_2d(const PacketParams& params, double xi, double eta, double t) {
  const double s = chirality_sign(params.chirality);
  const double tau = params.omega * t;
  const complex rot = std::exp(-kI * tau);
  const complex zx = params.xi0 * rot;
  const complex zy = s * params.eta0 * kI * rot;
  const double xi0_sq = params.xi0 * params.xi0;
  const double eta0_sq = params.eta0 * params.eta0;
  const complex exponent = -kI * tau + s * kI * (0.25 * std::numbers::pi) -
                           0.5 * (xi * xi + eta * eta) + zx * xi + zy * eta -
                           0.25 * (zx * zx + xi0_sq) - 0.25 * (zy * zy + eta0_sq);
  return std::exp(exponent) / std::sqrt(std::numbers::pi);
}

complex initial_state(const PacketParams& params, double xi, double eta) {
  const double s = chirality_sign(params.chirality);
  const complex exponent{-0.5 * (xi * xi + eta * eta) - 0.5 * params.xi0 * params.xi0 +
                             params.xi0 * xi,
                         s * params.eta0 * eta};
  return std::exp(exponent) / std::sqrt(std::numbers::pi);
}

std::pair<double, double> classical_center(const PacketParams& params, double t) {
  const double tau = params.omega * t;
  return {params.xi0 * std::cos(tau),
          chirality_sign(params.chirality) * params.eta0 * std::sin(tau)};
}

}  // namespace cs2d
