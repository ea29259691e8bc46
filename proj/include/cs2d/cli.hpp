#pragma once

// Command-line front end: coeffs | observables | evolve | verify.

#include "cs2d/states.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace cs2d::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

enum class Format { csv, json };

struct RunConfig {
  PacketParams params;
  bool params_given = false;  // false: verify runs its built-in sweeps
  std::optional<int> n_max;
  std::optional<double> grid_half_width;  // default max(xi0, eta0) + 6
  int grid_points = 257;
  std::optional<double> t_max;  // default one period 2 pi / omega
  int t_steps = 64;
  Format format = Format::csv;
  std::string output_path;  // empty: the `out` stream
};

/// Throws std::invalid_argument on an invalid configuration.
void validate(const RunConfig& config);

/// Renders a double with 17 significant digits, independent of locale.
std::string format_number(double value);

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_observables(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cs2d::cli
