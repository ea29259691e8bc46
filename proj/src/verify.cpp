#include "cs2d/verify.hpp"

#include "cs2d/dynamics.hpp"
#include "cs2d/expansion.hpp"
#include "cs2d/observables.hpp"
#include "cs2d/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace cs2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CheckResult make(std::string name, double residual, double tolerance, std::string detail = {}) {
  return {std::move(name), residual <= tolerance, residual, tolerance, std::move(detail)};
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

std::string describe(const PacketParams& p) {
  std::ostringstream os;
  os << "(xi0=" << p.xi0 << ", eta0=" << p.eta0
     << (p.chirality == Chirality::retarded ? ", retarded)" : ", advanced)");
  return os.str();
}

PacketParams mirrored(PacketParams p) {
  p.chirality = p.chirality == Chirality::retarded ? Chirality::advanced : Chirality::retarded;
  return p;
}

CheckResult check_laguerre_identity() {
  double worst = 0.0;
  double worst_zero = 0.0;
  std::string where;
  for (int n = 0; n <= 6; ++n) {
    for (int mu = 0; mu <= 4; ++mu) {
      for (int lambda = 0; lambda <= 6; ++lambda) {
        const auto r = specialfn::verify_laguerre_integral(n, mu, lambda);
        const double rel =
            std::abs(r.closed_form - r.quadrature) / std::max(1.0, std::abs(r.closed_form));
        if (rel > worst) {
          worst = rel;
          where = "n=" + std::to_string(n) + " mu=" + std::to_string(mu) +
                  " lambda=" + std::to_string(lambda);
        }
        if (lambda == mu && n >= 1) {
          worst_zero = std::max({worst_zero, std::abs(r.closed_form), std::abs(r.quadrature)});
        }
      }
    }
  }
  return make("laguerre_integral_identity", std::max(worst, worst_zero), 1e-10, where);
}

CheckResult check_coefficient_oracle(const std::vector<PacketParams>& sweep,
                                     const CoefficientFn& analytic) {
  double worst = 0.0;
  double worst_imag = 0.0;
  std::string where;
  for (const auto& p : sweep) {
    for (int principal = 0; principal <= 16; ++principal) {
      for (const auto& mode : modes_in_shell(principal)) {
        const complex q = coeff_quadrature(p, mode, recommended_radial_order(p, mode),
                                           recommended_angular_points(p, mode));
        const double err = std::abs(q.real() - analytic(p, mode));
        if (err > worst) {
          worst = err;
          where = describe(p) + " m=" + std::to_string(mode.m) + " n_r=" + std::to_string(mode.n_r);
        }
        worst_imag = std::max(worst_imag, std::abs(q.imag()));
      }
    }
  }
  // Real parts against 1e-10, imaginary parts against 1e-12.
  const bool passed = worst <= 1e-10 && worst_imag <= 1e-12;
  CheckResult r{"coefficient_oracle", passed, worst, 1e-10,
                where + "; max |Im| = " + sci(worst_imag)};
  return r;
}

CheckResult check_circular_support(const std::vector<PacketParams>& sweep) {
  double worst = 0.0;
  int checked = 0;
  for (const auto& base : sweep) {
    if (base.xi0 != base.eta0) continue;
    for (const auto& p : {base, mirrored(base)}) {
      const double s = chirality_sign(p.chirality);
      for (int principal = 0; principal <= 12; ++principal) {
        for (const auto& mode : modes_in_shell(principal)) {
          const bool allowed = mode.n_r == 0 && s * mode.m >= 0;
          if (allowed) continue;
          const complex q = coeff_quadrature(p, mode, recommended_radial_order(p, mode),
                                             recommended_angular_points(p, mode));
          worst = std::max(worst, std::abs(q));
          ++checked;
        }
      }
    }
  }
  return make("circular_support", worst, 1e-12,
              std::to_string(checked) + " forbidden modes checked");
}

CheckResult check_normalization(const std::vector<PacketParams>& sweep) {
  double worst_deficit = 0.0;
  double worst_poisson = 0.0;
  for (const auto& p : sweep) {
    const auto table = build_table(p);
    worst_deficit = std::max(worst_deficit, 1.0 - table.sum_squares());
    const auto marg = marginals(table);
    for (int n = 0; n <= 20; ++n) {
      const auto it = marg.by_principal.find(n);
      const double got = it == marg.by_principal.end() ? 0.0 : it->second;
      worst_poisson = std::max(worst_poisson, std::abs(got - poisson_principal(p, n)));
    }
  }
  const bool passed = worst_deficit <= 1e-12 && worst_poisson <= 1e-10;
  return {"normalization_poisson", passed, std::max(worst_deficit, worst_poisson), 1e-10,
          "max deficit " + sci(worst_deficit)};
}

CheckResult check_moment_identities(const std::vector<PacketParams>& sweep) {
  double worst = 0.0;
  std::string where;
  auto track = [&](double err, const PacketParams& p, const char* what) {
    if (err > worst) {
      worst = err;
      where = describe(p) + " " + what;
    }
  };
  for (const auto& p : sweep) {
    const auto table = build_table(p);
    const auto report = compute_report(table);
    const auto ids = partial_moment_identities(table);
    const auto want = expected_identities(p);
    track(std::abs(report.mean_lz - closed_form_lz(p)), p, "mean_lz");
    track(std::abs(report.mean_energy - closed_form_energy(p)), p, "mean_energy");
    track(std::abs(ids.a_squared - want.a_squared), p, "identity_a_squared");
    track(std::abs(ids.b_squared - want.b_squared), p, "identity_b_squared");
    track(std::abs(ids.a2_plus_b2 - want.a2_plus_b2), p, "identity_a2_plus_b2");
    track(std::abs(ids.signed_m - want.signed_m), p, "identity_signed_m");
    if (p.xi0 == p.eta0 && p.chirality == Chirality::retarded) {
      track(std::abs(report.mean_m - p.xi0 * p.xi0), p, "circular mean_m");
      track(std::abs(report.mean_energy - (report.mean_m + 1.0)), p, "circular energy");
    }
  }
  return make("moment_identities", worst, 1e-9, where);
}

CheckResult check_orbits(const std::vector<PacketParams>& sweep, int n_times, int points) {
  double worst_center = 0.0;
  double worst_var = 0.0;
  double worst_ellipse = 0.0;
  bool orientation_ok = true;
  std::vector<double> times(static_cast<std::size_t>(n_times));
  for (const auto& p : sweep) {
    const double period = kTwoPi / p.omega;
    for (int k = 0; k < n_times; ++k) times[k] = period * k / n_times;
    const auto grid = Grid2D::for_packet(p, points);
    const auto samples = trace_orbit(p, times, grid);
    for (const auto& s : samples) {
      const auto [cx, cy] = classical_center(p, s.t);
      worst_center = std::max({worst_center, std::abs(s.centroid_xi - cx),
                               std::abs(s.centroid_eta - cy)});
      worst_var = std::max({worst_var, std::abs(s.var_xi - 0.5), std::abs(s.var_eta - 0.5)});
      if (p.xi0 > 0.0 && p.eta0 > 0.0) {
        const double e = std::pow(s.centroid_xi / p.xi0, 2) + std::pow(s.centroid_eta / p.eta0, 2);
        worst_ellipse = std::max(worst_ellipse, std::abs(e - 1.0));
      }
    }
    if (p.xi0 > 0.0 && p.eta0 > 0.0) {
      const auto flipped = trace_orbit(mirrored(p), times, grid);
      const double a = signed_area(samples);
      const double b = signed_area(flipped);
      const double expected_sign = chirality_sign(p.chirality);
      if (!(a * expected_sign > 0.0) || !(b * expected_sign < 0.0) ||
          std::abs(a + b) > 1e-9 * std::abs(a)) {
        orientation_ok = false;
      }
    }
  }
  const double residual = std::max({worst_center, worst_var, worst_ellipse});
  CheckResult r = make("classical_correspondence", residual, 1e-6,
                       "centroid " + sci(worst_center) + ", variance " +
                           sci(worst_var) + ", ellipse " +
                           sci(worst_ellipse) +
                           (orientation_ok ? ", orientation flips" : ", ORIENTATION MISMATCH"));
  r.passed = r.passed && orientation_ok;
  return r;
}

CheckResult check_spectral(const PacketParams& p, int points) {
  const auto table = build_table(p);
  const auto grid = Grid2D::for_packet(p, points);
  const SpectralSynthesizer synth(table, grid);
  double worst = 0.0;
  for (const double t : {0.0, 0.7, std::numbers::pi, 5.1}) {
    worst = std::max(worst, phase_aligned_max_error(synth.at(t), evolve_closed_form(p, grid, t)));
  }
  const bool tail_ok = table.tail_mass < kSpectralMaxTail;
  CheckResult r = make("spectral_completeness", worst, 1e-8,
                       describe(p) + " n_max=" + std::to_string(table.n_max) +
                           " tail=" + sci(table.tail_mass));
  r.passed = r.passed && tail_ok;
  return r;
}

}  // namespace

std::vector<PacketParams> moment_sweep() {
  const double amps[] = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  std::vector<PacketParams> out;
  for (const double x : amps) {
    for (const double y : amps) out.emplace_back(x, y);
  }
  return out;
}

std::vector<PacketParams> oracle_sweep() {
  return {PacketParams(1.0, 1.0), PacketParams(2.0, 2.0), PacketParams(1.5, 0.5),
          PacketParams(1.0, 0.0), PacketParams(0.3, 2.1)};
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const CoefficientFn analytic = options.analytic ? options.analytic : CoefficientFn(coeff_elliptic);
  std::vector<PacketParams> oracle = oracle_sweep();
  std::vector<PacketParams> moments = moment_sweep();
  PacketParams spectral(1.5, 0.5);
  if (options.point) {
    oracle = moments = {*options.point};
    spectral = *options.point;
  }

  std::vector<CheckResult> out;
  out.push_back(check_laguerre_identity());
  out.push_back(check_coefficient_oracle(oracle, analytic));
  if (std::any_of(oracle.begin(), oracle.end(),
                  [](const PacketParams& p) { return p.xi0 == p.eta0; })) {
    out.push_back(check_circular_support(oracle));
  }
  out.push_back(check_normalization(moments));
  out.push_back(check_moment_identities(moments));
  out.push_back(check_orbits(oracle, options.orbit_times, options.grid_points));
  out.push_back(check_spectral(spectral, options.grid_points));
  return out;
}

}  // namespace cs2d
