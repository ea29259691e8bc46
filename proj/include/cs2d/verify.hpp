#pragma once

// One-shot oracle and identity checks across all modules.

#include "cs2d/states.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cs2d {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

using CoefficientFn = std::function<double(const PacketParams&, const ModeIndex&)>;

struct VerifyOptions {
  /// Restrict the parameter-dependent checks to one packet. When empty the
  /// built-in sweeps are used.
  std::optional<PacketParams> point;
  /// Closed-form coefficient under test; defaults to coeff_elliptic.
  CoefficientFn analytic;
  int orbit_times = 64;
  int grid_points = 257;
};

/// Amplitude sweep {0, 0.5, 1, 1.5, 2, 3}^2 used for the moment checks.
std::vector<PacketParams> moment_sweep();
/// Packets used for the quadrature-oracle and orbit checks.
std::vector<PacketParams> oracle_sweep();

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace cs2d
