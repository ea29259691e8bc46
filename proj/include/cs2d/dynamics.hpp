#pragma once

// Time evolution of the packet by two independent routes: the closed-form
// coherent state and spectral synthesis over a coefficient table. Times are
// physical, entering only through omega * t.

#include "cs2d/expansion.hpp"

#include <span>
#include <string>
#include <vector>

namespace cs2d {

struct TrajectorySample {
  double t = 0.0;
  double centroid_xi = 0.0;
  double centroid_eta = 0.0;
  double var_xi = 0.0;
  double var_eta = 0.0;
  double norm = 0.0;
  double peak_density = 0.0;
};

/// Copy of `grid` filled with coherent_2d at time t.
Grid2D evolve_closed_form(const PacketParams& params, const Grid2D& grid, double t);

/// Spectral synthesis sum_modes C e^{-i (N+1) omega t} psi_{m n_r} on a
/// fixed grid. The per-shell partial sums are precomputed once, so each
/// time costs O(points * (n_max + 1)).
class SpectralSynthesizer {
 public:
  SpectralSynthesizer(const CoefficientTable& table, const Grid2D& grid);

  [[nodiscard]] Grid2D at(double t) const;
  [[nodiscard]] int n_max() const noexcept { return n_max_; }

 private:
  Grid2D grid_;
  double omega_;
  int n_max_;
  std::vector<complex> shell_sums_;  // [point][N]
};

inline constexpr double kSpectralMaxTail = 1e-10;

/// One-shot spectral synthesis. A table tail above 1e-10 voids the 1e-8
/// accuracy target; a note is written to `warning` when it is non-null.
Grid2D evolve_spectral(const CoefficientTable& table, const Grid2D& grid, double t,
                       std::string* warning = nullptr);

/// max_k |a_k - e^{i theta} b_k| with theta matching the phases of a and b
/// at the grid point where |b| is largest.
double phase_aligned_max_error(const Grid2D& a, const Grid2D& b);

/// Discrete norm sum |psi|^2 dxi deta.
double grid_norm(const Grid2D& grid);

/// Centroid and variances of |psi|^2 by grid summation of the closed form.
/// Throws std::invalid_argument when the grid does not reach
/// max(xi0, eta0) + 6 in every direction.
std::vector<TrajectorySample> trace_orbit(const PacketParams& params, std::span<const double> times,
                                          const Grid2D& grid);

/// Shoelace area of the closed centroid polygon; positive for
/// counter-clockwise traversal.
double signed_area(std::span<const TrajectorySample> samples);

}  // namespace cs2d
