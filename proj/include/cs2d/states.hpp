#pragma once

// Closed-form wavefunctions of the 2D isotropic oscillator in dimensionless
// units (hbar = M = omega = 1, alpha = 1): the simultaneous (H, l_z)
// eigenbasis and the 1D / 2D coherent packets.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace cs2d {

using complex = std::complex<double>;

enum class Chirality {
  retarded,  // y packet lags x by pi/2: counter-clockwise, m >= 0 support
  advanced,  // y packet leads x by pi/2: clockwise, m <= 0 support
};

/// +1 for retarded, -1 for advanced.
constexpr double chirality_sign(Chirality c) noexcept {
  return c == Chirality::retarded ? 1.0 : -1.0;
}

/// Eigenstate label (m, n_r). Principal number N = 2 n_r + |m|.
struct ModeIndex {
  int m = 0;
  int n_r = 0;

  ModeIndex() = default;
  ModeIndex(int m_, int n_r_);

  [[nodiscard]] int abs_m() const noexcept { return m < 0 ? -m : m; }
  [[nodiscard]] int principal() const noexcept { return 2 * n_r + abs_m(); }

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
  /// Orders by (N, m, n_r); N and m together determine n_r.
  friend bool operator<(const ModeIndex& a, const ModeIndex& b) noexcept {
    if (a.principal() != b.principal()) return a.principal() < b.principal();
    return a.m < b.m;
  }
};

/// All modes with principal number exactly N, ordered by m.
std::vector<ModeIndex> modes_in_shell(int principal);

/// Dimensionless packet amplitudes xi0 = alpha x0, eta0 = alpha y0.
struct PacketParams {
  double xi0 = 0.0;
  double eta0 = 0.0;
  Chirality chirality = Chirality::retarded;
  double omega = 1.0;

  PacketParams() = default;
  PacketParams(double xi0_, double eta0_, Chirality c = Chirality::retarded, double omega_ = 1.0);

  /// A = (xi0 - eta0) / 2. May be negative when eta0 > xi0.
  [[nodiscard]] double a() const noexcept { return 0.5 * (xi0 - eta0); }
  /// B = (xi0 + eta0) / 2 >= |A|.
  [[nodiscard]] double b() const noexcept { return 0.5 * (xi0 + eta0); }
  /// Mean principal number (xi0^2 + eta0^2) / 2.
  [[nodiscard]] double mean_principal() const noexcept {
    return 0.5 * (xi0 * xi0 + eta0 * eta0);
  }
};

struct PhysicalUnits {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;

  /// alpha = sqrt(M omega / hbar).
  [[nodiscard]] double alpha() const;
};

PacketParams to_dimensionless(const PhysicalUnits& units);

/// Uniform rectangular grid over (xi, eta) carrying complex samples,
/// row-major with xi as the slow index.
class Grid2D {
 public:
  Grid2D(std::vector<double> xi_axis, std::vector<double> eta_axis);

  /// Centered grid: `points` samples per axis on [-half_width, half_width].
  /// Odd point counts place a node exactly at the origin and make the axis
  /// exactly mirror-symmetric.
  static Grid2D centered(double half_width, int points);
  /// Default grid for a packet: half width max(xi0, eta0) + 6, 257 points.
  static Grid2D for_packet(const PacketParams& params, int points = 257);

  [[nodiscard]] const std::vector<double>& xi_axis() const noexcept { return xi_; }
  [[nodiscard]] const std::vector<double>& eta_axis() const noexcept { return eta_; }
  [[nodiscard]] std::size_t nx() const noexcept { return xi_.size(); }
  [[nodiscard]] std::size_t ny() const noexcept { return eta_.size(); }
  [[nodiscard]] double dxi() const noexcept { return xi_[1] - xi_[0]; }
  [[nodiscard]] double deta() const noexcept { return eta_[1] - eta_[0]; }
  /// Smallest |coordinate| reach over both axes.
  [[nodiscard]] double half_span() const noexcept;

  [[nodiscard]] complex& at(std::size_t i, std::size_t j) { return values_[i * eta_.size() + j]; }
  [[nodiscard]] const complex& at(std::size_t i, std::size_t j) const {
    return values_[i * eta_.size() + j];
  }
  [[nodiscard]] std::vector<complex>& values() noexcept { return values_; }
  [[nodiscard]] const std::vector<complex>& values() const noexcept { return values_; }

 private:
  std::vector<double> xi_;
  std::vector<double> eta_;
  std::vector<complex> values_;
};

/// Normalized psi_{m n_r}(rho, phi) = [n_r!/(pi (|m|+n_r)!)]^{1/2} e^{i m phi}
///   rho^{|m|} e^{-rho^2/2} L_{n_r}^{|m|}(rho^2).
complex eigenstate(const ModeIndex& mode, double rho, double phi);

/// Energy (N + 1) in units of hbar omega.
double energy(const ModeIndex& mode) noexcept;

/// 1D coherent state with amplitude xi0 at time t (omega = 1).
complex coherent_1d(double xi0, double xi, double t);

/// 2D coherent state; at t = 0 equals initial_state times e^{+-i pi/4}.
complex coherent_2d(const PacketParams& params, double xi, double eta, double t);

/// Packet at t = 0 with the constant e^{+-i pi/4} dropped:
/// pi^{-1/2} exp[-(xi^2+eta^2)/2 - xi0^2/2 + xi0 xi + i s eta0 eta].
complex initial_state(const PacketParams& params, double xi, double eta);

/// Center of the packet (xi0 cos wt, s eta0 sin wt).
std::pair<double, double> classical_center(const PacketParams& params, double t);

}  // namespace cs2d
