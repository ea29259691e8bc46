#include "cs2d/dynamics.hpp"

#include "cs2d/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace cs2d {

namespace {

// Runs body(row) for row in [0, rows) across hardware threads. Each row
// writes to disjoint output, so the result does not depend on scheduling.
template <typename Body>
void parallel_rows(std::size_t rows, Body&& body) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || rows < 8) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < rows; r += workers) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Grid2D evolve_closed_form(const PacketParams& params, const Grid2D& grid, double t) {
  Grid2D out = grid;
  const auto& xs = out.xi_axis();
  const auto& ys = out.eta_axis();
  parallel_rows(out.nx(), [&](std::size_t i) {
    for (std::size_t j = 0; j < out.ny(); ++j) out.at(i, j) = coherent_2d(params, xs[i], ys[j], t);
  });
  return out;
}

SpectralSynthesizer::SpectralSynthesizer(const CoefficientTable& table, const Grid2D& grid)
    : grid_(grid), omega_(table.params.omega), n_max_(table.n_max) {
  const int n_max = n_max_;
  const int radial_max = n_max / 2;
  const int stride = radial_max + 1;

  // Dense coefficient lookup over the triangular index set.
  std::vector<double> coeff(static_cast<std::size_t>(2 * n_max + 1) * stride, 0.0);
  for (const auto& [mode, c] : table.entries) {
    coeff[static_cast<std::size_t>(mode.m + n_max) * stride + mode.n_r] = c;
  }
  // log of the eigenstate normalizer [n_r! / (pi (|m| + n_r)!)]^{1/2}
  std::vector<double> log_norm(static_cast<std::size_t>(n_max + 1) * stride, 0.0);
  for (int am = 0; am <= n_max; ++am) {
    for (int nr = 0; 2 * nr + am <= n_max; ++nr) {
      log_norm[static_cast<std::size_t>(am) * stride + nr] =
          0.5 * (specialfn::log_factorial(nr) - specialfn::log_factorial(am + nr) -
                 std::log(std::numbers::pi));
    }
  }

  const std::size_t shells = static_cast<std::size_t>(n_max) + 1;
  shell_sums_.assign(grid_.nx() * grid_.ny() * shells, complex{});
  const auto& xs = grid_.xi_axis();
  const auto& ys = grid_.eta_axis();

  parallel_rows(grid_.nx(), [&](std::size_t i) {
    for (std::size_t j = 0; j < grid_.ny(); ++j) {
      complex* sums = &shell_sums_[(i * grid_.ny() + j) * shells];
      const double rho = std::hypot(xs[i], ys[j]);
      const double phi = std::atan2(ys[j], xs[i]);
      const double u = rho * rho;
      const double log_rho = rho > 0.0 ? std::log(rho) : 0.0;
      for (int am = 0; am <= n_max; ++am) {
        if (rho == 0.0 && am > 0) break;
        const double envelope_log = -0.5 * u + am * log_rho;
        const complex rot_pos = std::polar(1.0, am * phi);
        const complex rot_neg = std::conj(rot_pos);
        // L_{nr}^{am}(u) by upward recurrence alongside the n_r loop.
        double l_prev = 0.0;
        double l_curr = 1.0;
        for (int nr = 0; 2 * nr + am <= n_max; ++nr) {
          if (nr == 1) {
            l_prev = 1.0;
            l_curr = 1.0 + am - u;
          } else if (nr > 1) {
            const double next =
                ((2.0 * (nr - 1) + 1.0 + am - u) * l_curr - (nr - 1 + am) * l_prev) / nr;
            l_prev = l_curr;
            l_curr = next;
          }
          const double radial =
              std::exp(envelope_log + log_norm[static_cast<std::size_t>(am) * stride + nr]) *
              l_curr;
          const int principal = 2 * nr + am;
          const double c_pos = coeff[static_cast<std::size_t>(am + n_max) * stride + nr];
          if (c_pos != 0.0) sums[principal] += c_pos * radial * rot_pos;
          if (am > 0) {
            const double c_neg = coeff[static_cast<std::size_t>(-am + n_max) * stride + nr];
            if (c_neg != 0.0) sums[principal] += c_neg * radial * rot_neg;
          }
        }
      }
    }
  });
}

Grid2D SpectralSynthesizer::at(double t) const {
  Grid2D out = grid_;
  const std::size_t shells = static_cast<std::size_t>(n_max_) + 1;
  std::vector<complex> phases(shells);
  for (std::size_t n = 0; n < shells; ++n) {
    phases[n] = std::polar(1.0, -(static_cast<double>(n) + 1.0) * omega_ * t);
  }
  auto& values = out.values();
  for (std::size_t p = 0; p < values.size(); ++p) {
    const complex* sums = &shell_sums_[p * shells];
    complex acc{};
    for (std::size_t n = 0; n < shells; ++n) acc += phases[n] * sums[n];
    values[p] = acc;
  }
  return out;
}

Grid2D evolve_spectral(const CoefficientTable& table, const Grid2D& grid, double t,
                       std::string* warning) {
  if (warning != nullptr) {
    warning->clear();
    if (!(table.tail_mass < kSpectralMaxTail)) {
      *warning = "evolve_spectral: tail mass " + std::to_string(table.tail_mass) +
                 " above 1e-10; pointwise accuracy degraded";
    }
  }
  return SpectralSynthesizer(table, grid).at(t);
}

double phase_aligned_max_error(const Grid2D& a, const Grid2D& b) {
  const auto& va = a.values();
  const auto& vb = b.values();
  if (va.size() != vb.size()) {
    throw std::invalid_argument("phase_aligned_max_error: grid shapes differ");
  }
  std::size_t peak = 0;
  for (std::size_t k = 1; k < vb.size(); ++k) {
    if (std::norm(vb[k]) > std::norm(vb[peak])) peak = k;
  }
  const complex rotation = (std::abs(va[peak]) > 0.0 && std::abs(vb[peak]) > 0.0)
                               ? std::polar(1.0, std::arg(va[peak]) - std::arg(vb[peak]))
                               : complex{1.0, 0.0};
  double worst = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) {
    worst = std::max(worst, std::abs(va[k] - rotation * vb[k]));
  }
  return worst;
}

double grid_norm(const Grid2D& grid) {
  double sum = 0.0;
  for (const auto& v : grid.values()) sum += std::norm(v);
  return sum * grid.dxi() * grid.deta();
}

std::vector<TrajectorySample> trace_orbit(const PacketParams& params, std::span<const double> times,
                                          const Grid2D& grid) {
  const double required = std::max(params.xi0, params.eta0) + 6.0;
  if (grid.half_span() < required * (1.0 - 1e-12)) {
    throw std::invalid_argument("trace_orbit: grid half span " + std::to_string(grid.half_span()) +
                                " below required " + std::to_string(required));
  }
  const auto& xs = grid.xi_axis();
  const auto& ys = grid.eta_axis();
  const double cell = grid.dxi() * grid.deta();

  std::vector<TrajectorySample> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const Grid2D field = evolve_closed_form(params, grid, times[k]);
    double mass = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < field.nx(); ++i) {
      for (std::size_t j = 0; j < field.ny(); ++j) {
        const double d = std::norm(field.at(i, j));
        mass += d;
        sx += d * xs[i];
        sy += d * ys[j];
        peak = std::max(peak, d);
      }
    }
    const double cx = sx / mass;
    const double cy = sy / mass;
    double vx = 0.0;
    double vy = 0.0;
    for (std::size_t i = 0; i < field.nx(); ++i) {
      for (std::size_t j = 0; j < field.ny(); ++j) {
        const double d = std::norm(field.at(i, j));
        vx += d * (xs[i] - cx) * (xs[i] - cx);
        vy += d * (ys[j] - cy) * (ys[j] - cy);
      }
    }
    out[k] = {times[k], cx, cy, vx / mass, vy / mass, mass * cell, peak};
  }
  return out;
}

double signed_area(std::span<const TrajectorySample> samples) {
  double twice = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& p = samples[k];
    const auto& q = samples[(k + 1) % samples.size()];
    twice += p.centroid_xi * q.centroid_eta - q.centroid_xi * p.centroid_eta;
  }
  return 0.5 * twice;
}

}  // namespace cs2d
