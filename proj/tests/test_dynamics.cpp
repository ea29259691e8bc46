#include <doctest.h>

#include "cs2d/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace cs2d;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> period_times(const PacketParams& p, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) t[k] = kTwoPi / p.omega * k / n;
  return t;
}

}  // namespace

TEST_CASE("evolve_closed_form fills the grid with coherent_2d") {
  const PacketParams p(1.0, 0.5);
  const auto grid = Grid2D::centered(7.0, 65);
  const auto g = evolve_closed_form(p, grid, 0.4);
  for (int i = 0; i < 65; i += 8) {
    for (int j = 0; j < 65; j += 8) {
      const complex want = coherent_2d(p, grid.xi_axis()[i], grid.eta_axis()[j], 0.4);
      CHECK(std::abs(g.at(i, j) - want) <= 1e-15);
    }
  }
}

TEST_CASE("norm is conserved by the closed form") {
  const PacketParams p(2.0, 1.0);
  const auto grid = Grid2D::for_packet(p, 129);
  const double n0 = grid_norm(evolve_closed_form(p, grid, 0.0));
  CHECK(n0 == doctest::Approx(1.0).epsilon(1e-9));
  for (double t : {0.3, 1.9, 4.4}) {
    CHECK(std::abs(grid_norm(evolve_closed_form(p, grid, t)) - n0) <= 1e-9);
  }
}

TEST_CASE("spectral synthesis matches the closed form") {
  for (const auto& p : {PacketParams(1.5, 0.5), PacketParams(1.0, 1.0, Chirality::advanced),
                        PacketParams(0.0, 2.0)}) {
    const auto table = build_table(p);
    REQUIRE(table.tail_mass < kSpectralMaxTail);
    const auto grid = Grid2D::for_packet(p, 129);
    const SpectralSynthesizer synth(table, grid);
    CHECK(synth.n_max() == table.n_max);
    for (double t : {0.0, 0.7, std::numbers::pi, 5.1}) {
      CHECK(phase_aligned_max_error(synth.at(t), evolve_closed_form(p, grid, t)) <= 1e-8);
    }
  }
}

TEST_CASE("evolve_spectral warns on a truncated table") {
  const PacketParams p(1.5, 0.5);
  const auto grid = Grid2D::for_packet(p, 65);
  std::string warning;
  const auto g = evolve_spectral(build_table(p, 3), grid, 0.2, &warning);
  CHECK_FALSE(warning.empty());
  const auto full = evolve_spectral(build_table(p), grid, 0.2, &warning);
  CHECK(warning.empty());
  // truncation error is visible
  CHECK(phase_aligned_max_error(g, full) > 1e-4);
}

TEST_CASE("phase_aligned_max_error ignores a global phase") {
  const PacketParams p(1.0, 0.3);
  const auto grid = Grid2D::for_packet(p, 65);
  const auto a = evolve_closed_form(p, grid, 1.0);
  auto b = a;
  for (auto& v : b.values()) v *= std::polar(1.0, 2.1);
  CHECK(phase_aligned_max_error(a, b) <= 1e-15);
  auto c = a;
  c.values()[c.values().size() / 2] += 1e-3;
  CHECK(phase_aligned_max_error(a, c) >= 0.9e-3);
}

TEST_CASE("trace_orbit follows the classical ellipse without spreading") {
  for (const auto& p : {PacketParams(1.5, 0.5), PacketParams(2.0, 2.0, Chirality::advanced),
                        PacketParams(1.0, 0.0)}) {
    const auto times = period_times(p, 64);
    const auto samples = trace_orbit(p, times, Grid2D::for_packet(p));
    REQUIRE(samples.size() == 64);
    CHECK(samples[0].centroid_xi == doctest::Approx(p.xi0).epsilon(1e-9));
    CHECK(std::abs(samples[0].centroid_eta) <= 1e-9);
    for (const auto& s : samples) {
      const auto [cx, cy] = classical_center(p, s.t);
      CHECK(std::abs(s.centroid_xi - cx) <= 1e-6);
      CHECK(std::abs(s.centroid_eta - cy) <= 1e-6);
      CHECK(std::abs(s.var_xi - 0.5) <= 1e-6);
      CHECK(std::abs(s.var_eta - 0.5) <= 1e-6);
      CHECK(std::abs(s.norm - 1.0) <= 1e-9);
      CHECK(s.peak_density <= 1.0 / std::numbers::pi + 1e-12);
    }
  }
}

TEST_CASE("trace_orbit works with a non-unit frequency") {
  PacketParams p(1.0, 0.5);
  p.omega = 3.0;
  const auto times = period_times(p, 16);
  for (const auto& s : trace_orbit(p, times, Grid2D::for_packet(p, 129))) {
    const auto [cx, cy] = classical_center(p, s.t);
    CHECK(std::abs(s.centroid_xi - cx) <= 1e-6);
    CHECK(std::abs(s.centroid_eta - cy) <= 1e-6);
  }
}

TEST_CASE("trace_orbit rejects an under-spanned grid") {
  const PacketParams p(3.0, 1.0);
  const std::vector<double> times{0.0};
  CHECK_THROWS_AS(trace_orbit(p, times, Grid2D::centered(5.0, 65)), std::invalid_argument);
}

TEST_CASE("signed_area: orientation follows chirality") {
  const PacketParams ret(1.5, 0.5);
  const PacketParams adv(1.5, 0.5, Chirality::advanced);
  const auto times = period_times(ret, 64);
  const auto grid = Grid2D::for_packet(ret);
  const double a = signed_area(trace_orbit(ret, times, grid));
  const double b = signed_area(trace_orbit(adv, times, grid));
  CHECK(a > 0.0);
  CHECK(b < 0.0);
  CHECK(std::abs(a + b) <= 1e-9 * std::abs(a));
  // inscribed 64-gon of the ellipse pi * xi0 * eta0
  const double polygon = 0.5 * 64 * 1.5 * 0.5 * std::sin(kTwoPi / 64);
  CHECK(a == doctest::Approx(polygon).epsilon(1e-6));

  std::vector<TrajectorySample> square(4);
  const double pts[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int k = 0; k < 4; ++k) {
    square[k].centroid_xi = pts[k][0];
    square[k].centroid_eta = pts[k][1];
  }
  CHECK(signed_area(square) == 1.0);
}
