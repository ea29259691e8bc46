#pragma once

// Expansion of the t = 0 coherent packet in the (H, l_z) eigenbasis:
// closed-form coefficients, an independent projection-integral oracle, and
// truncated coefficient tables.

#include "cs2d/states.hpp"

#include <map>
#include <optional>
#include <string>

namespace cs2d {

/// Truncated expansion over all modes with 2 n_r + |m| <= n_max.
///
/// Only nonzero amplitudes are stored; modes whose amplitude is exactly zero
/// (m < 0 or n_r > 0 for circular retarded packets) are absent.
struct CoefficientTable {
  PacketParams params;
  int n_max = 0;
  std::map<ModeIndex, double> entries;  // ordered by (N, m)
  double tail_mass = 0.0;               // max(0, 1 - sum of squares)

  [[nodiscard]] double sum_squares() const;
  /// Amplitude at `mode`, zero when absent or beyond truncation.
  [[nodiscard]] double at(const ModeIndex& mode) const;
};

inline constexpr int kMaxTableNmax = 10'000;

/// Circular-orbit coefficient (eta0 = xi0, retarded):
/// xi0^m e^{-xi0^2/2} / sqrt(m!) for m >= 0 and n_r = 0, else 0.
double coeff_circular(double xi0, const ModeIndex& mode);

/// Elliptic-orbit coefficient in terms of A = (xi0-eta0)/2, B = (xi0+eta0)/2:
///   m >= 0: (-1)^{n_r} e^{-xi0^2/2} e^{AB} A^{n_r} B^{m+n_r} / sqrt(n_r! (m+n_r)!)
///   m <  0: (-1)^{n_r} e^{-xi0^2/2} e^{AB} B^{n_r} A^{|m|+n_r} / sqrt(n_r! (|m|+n_r)!)
/// Advanced chirality returns the retarded value at (-m, n_r). Evaluated as
/// log-magnitude plus sign, so large indices do not overflow.
double coeff_elliptic(const PacketParams& params, const ModeIndex& mode);

/// Recommended quadrature sizes for `coeff_quadrature`.
int recommended_radial_order(const PacketParams& params, const ModeIndex& mode);
int recommended_angular_points(const PacketParams& params, const ModeIndex& mode);

/// Projection integral int dphi int rho drho psi_c conj(psi_{m n_r}),
/// evaluated with the periodic trapezoid rule in phi and Gauss-Laguerre in
/// u = rho^2. Sizes below the recommended ones still run; a note is written
/// to `warning` when it is non-null.
complex coeff_quadrature(const PacketParams& params, const ModeIndex& mode, int radial_order,
                         int angular_points, std::string* warning = nullptr);

/// int_0^{2pi} exp[xi0 xi + i s eta0 eta] e^{-i m phi} dphi with
/// (xi, eta) = rho (cos phi, sin phi), summed as the power series
/// 2pi sum_k (A rho)^k (B rho)^{k+m} / (k! (k+m)!) (A and B swap for m < 0).
///
/// For A B < 0 the series alternates; with 2 sqrt|AB| rho beyond ~20 the
/// cancellation costs digits.
complex angular_integral(int m, const PacketParams& params, double rho);

/// Smallest N* whose Poisson(mean_principal) upper tail is below 1e-13,
/// plus a margin of 4.
int auto_nmax(const PacketParams& params);

/// Enumerates all modes with N <= n_max (auto_nmax when omitted).
CoefficientTable build_table(const PacketParams& params, std::optional<int> n_max = std::nullopt);

}  // namespace cs2d
