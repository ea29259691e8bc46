#include "cs2d/cli.hpp"

#include "cs2d/dynamics.hpp"
#include "cs2d/expansion.hpp"
#include "cs2d/observables.hpp"
#include "cs2d/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cs2d::cli {

namespace {

using nlohmann::json;

const char* chirality_name(Chirality c) {
  return c == Chirality::retarded ? "retarded" : "advanced";
}

json params_json(const PacketParams& p) {
  return json{{"xi0", p.xi0},       {"eta0", p.eta0}, {"chirality", chirality_name(p.chirality)},
              {"omega", p.omega},   {"a", p.a()},     {"b", p.b()}};
}

// Output is assembled in memory and written once.
int emit(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err) {
  if (config.output_path.empty()) {
    out << text;
    out.flush();
    return out ? kSuccess : kIoError;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open output file '" << config.output_path << "'\n";
    return kIoError;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing '" << config.output_path << "'\n";
    return kIoError;
  }
  return kSuccess;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostringstream& os) : os_(os) {}

  CsvWriter& header(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
      if (!first) os_ << ',';
      os_ << n;
      first = false;
    }
    os_ << '\n';
    return *this;
  }

  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((write_cell(cells, first)), ...);
    os_ << '\n';
  }

 private:
  void write_cell(double v, bool& first) { sep(first) << format_number(v); }
  void write_cell(int v, bool& first) { sep(first) << v; }
  void write_cell(const std::string& v, bool& first) { sep(first) << v; }
  void write_cell(const char* v, bool& first) { sep(first) << v; }
  std::ostream& sep(bool& first) {
    if (!first) os_ << ',';
    first = false;
    return os_;
  }

  std::ostringstream& os_;
};

double grid_half_width(const RunConfig& c) {
  return c.grid_half_width.value_or(std::max(c.params.xi0, c.params.eta0) + 6.0);
}

std::vector<double> sample_times(const RunConfig& c) {
  const double t_max = c.t_max.value_or(2.0 * std::numbers::pi / c.params.omega);
  std::vector<double> times(static_cast<std::size_t>(c.t_steps));
  for (int k = 0; k < c.t_steps; ++k) times[k] = t_max * k / c.t_steps;
  return times;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void validate(const RunConfig& c) {
  if (!(c.params.xi0 >= 0.0) || !(c.params.eta0 >= 0.0)) {
    throw std::invalid_argument("xi0 and eta0 must be non-negative");
  }
  if (c.grid_points < 33 || c.grid_points % 2 == 0) {
    throw std::invalid_argument("--grid-points must be odd and >= 33");
  }
  if (c.t_steps < 1) throw std::invalid_argument("--tsteps must be >= 1");
  if (c.grid_half_width && !(*c.grid_half_width > 0.0)) {
    throw std::invalid_argument("--grid-half-width must be positive");
  }
  if (c.t_max && !(std::isfinite(*c.t_max))) throw std::invalid_argument("--tmax must be finite");
  if (c.n_max && (*c.n_max < 0 || *c.n_max > kMaxTableNmax)) {
    throw std::invalid_argument("--nmax must lie in [0, " + std::to_string(kMaxTableNmax) + "]");
  }
}

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto table = build_table(config.params, config.n_max);
  const double total = table.sum_squares();
  std::ostringstream os;
  if (config.format == Format::csv) {
    CsvWriter csv(os);
    csv.header({"m", "n_r", "N", "C", "|C|^2", "energy"});
    for (const auto& [mode, c] : table.entries) {
      csv.row(mode.m, mode.n_r, mode.principal(), c, c * c, energy(mode));
    }
    os << "# sum_abs_c2," << format_number(total) << ",tail_mass," << format_number(table.tail_mass)
       << '\n';
  } else {
    json entries = json::array();
    for (const auto& [mode, c] : table.entries) {
      entries.push_back({{"m", mode.m},
                         {"n_r", mode.n_r},
                         {"N", mode.principal()},
                         {"c", c},
                         {"c_sq", c * c},
                         {"energy", energy(mode)}});
    }
    const json doc{{"params", params_json(config.params)},
                   {"n_max", table.n_max},
                   {"entries", entries},
                   {"sum_c_sq", total},
                   {"tail_mass", table.tail_mass}};
    os << doc.dump(2) << '\n';
  }
  return emit(config, os.str(), out, err);
}

int cmd_observables(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& p = config.params;
  const auto table = build_table(p, config.n_max);
  const auto report = compute_report(table);
  const double tolerance = std::max(1e-9, 10.0 * table.tail_mass);

  struct Row {
    const char* name;
    double value;
    std::optional<double> expected;
  };
  std::vector<Row> rows{
      {"mean_m", report.mean_m, closed_form_lz(p)},
      {"mean_lz", report.mean_lz, closed_form_lz(p)},
      {"mean_energy", report.mean_energy, closed_form_energy(p)},
      {"mean_abs_m", report.mean_abs_m, std::nullopt},
      {"mean_nr", report.mean_nr, std::nullopt},
      {"norm_deficit", report.norm_deficit, std::nullopt},
      {"partial_nr_m_nonneg", report.partials.nr_m_nonneg, std::nullopt},
      {"partial_nr_m_neg", report.partials.nr_m_neg, std::nullopt},
      {"partial_m_plus_nr_m_nonneg", report.partials.m_plus_nr_m_nonneg, std::nullopt},
      {"partial_neg_m_plus_nr_m_neg", report.partials.neg_m_plus_nr_m_neg, std::nullopt},
  };
  if (table.tail_mass < kIdentityMaxTail) {
    const auto ids = partial_moment_identities(table);
    const auto want = expected_identities(p);
    rows.push_back({"identity_a_squared", ids.a_squared, want.a_squared});
    rows.push_back({"identity_b_squared", ids.b_squared, want.b_squared});
    rows.push_back({"identity_a2_plus_b2", ids.a2_plus_b2, want.a2_plus_b2});
    rows.push_back({"identity_signed_m", ids.signed_m, want.signed_m});
  }

  bool all_ok = true;
  std::ostringstream os;
  if (config.format == Format::csv) {
    CsvWriter csv(os);
    csv.header({"quantity", "value", "expected", "abs_diff"});
    for (const auto& r : rows) {
      if (r.expected) {
        const double diff = std::abs(r.value - *r.expected);
        all_ok = all_ok && diff <= tolerance;
        csv.row(r.name, r.value, *r.expected, diff);
      } else {
        csv.row(r.name, r.value, "", "");
      }
    }
  } else {
    json doc{{"params", params_json(p)}, {"n_max", table.n_max}, {"tail_mass", table.tail_mass},
             {"tolerance", tolerance}};
    for (const auto& r : rows) {
      doc[r.name] = r.value;
      if (r.expected) {
        const double diff = std::abs(r.value - *r.expected);
        all_ok = all_ok && diff <= tolerance;
        doc[std::string(r.name) + "_expected"] = *r.expected;
        doc[std::string(r.name) + "_abs_diff"] = diff;
      }
    }
    doc["pass"] = all_ok;
    os << doc.dump(2) << '\n';
  }
  const int io = emit(config, os.str(), out, err);
  if (io != kSuccess) return io;
  return all_ok ? kSuccess : kVerificationFailure;
}

int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& p = config.params;
  const auto grid = Grid2D::centered(grid_half_width(config), config.grid_points);
  const auto times = sample_times(config);
  const auto samples = trace_orbit(p, times, grid);
  const auto table = build_table(p, config.n_max);
  const SpectralSynthesizer synth(table, grid);

  std::ostringstream os;
  json rows = json::array();
  CsvWriter csv(os);
  if (config.format == Format::csv) {
    csv.header({"t", "centroid_xi", "centroid_eta", "classical_xi", "classical_eta", "var_xi",
                "var_eta", "norm", "spectral_max_err"});
  }
  for (const auto& s : samples) {
    const auto [cx, cy] = classical_center(p, s.t);
    const double spectral_err = phase_aligned_max_error(synth.at(s.t), evolve_closed_form(p, grid, s.t));
    if (config.format == Format::csv) {
      csv.row(s.t, s.centroid_xi, s.centroid_eta, cx, cy, s.var_xi, s.var_eta, s.norm, spectral_err);
    } else {
      rows.push_back({{"t", s.t},
                      {"centroid_xi", s.centroid_xi},
                      {"centroid_eta", s.centroid_eta},
                      {"classical_xi", cx},
                      {"classical_eta", cy},
                      {"var_xi", s.var_xi},
                      {"var_eta", s.var_eta},
                      {"norm", s.norm},
                      {"spectral_max_err", spectral_err}});
    }
  }
  if (config.format == Format::json) {
    const json doc{{"params", params_json(p)},
                   {"n_max", table.n_max},
                   {"tail_mass", table.tail_mass},
                   {"signed_area", signed_area(samples)},
                   {"samples", rows}};
    os << doc.dump(2) << '\n';
  }
  return emit(config, os.str(), out, err);
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  if (config.params_given) options.point = config.params;
  options.grid_points = config.grid_points;
  options.orbit_times = config.t_steps;
  const auto results = run_verification(options);
  const bool all_ok =
      std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });

  std::ostringstream os;
  if (config.format == Format::json) {
    json checks = json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name},
                        {"pass", r.passed},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"detail", r.detail}});
    }
    os << json{{"checks", checks}, {"pass", all_ok}}.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << " residual=" << format_number(r.residual)
         << " tolerance=" << format_number(r.tolerance);
      if (!r.detail.empty()) os << " [" << r.detail << ']';
      os << '\n';
    }
    os << (all_ok ? "ALL PASS" : "VERIFICATION FAILED") << '\n';
  }
  const int io = emit(config, os.str(), out, err);
  if (io != kSuccess) return io;
  return all_ok ? kSuccess : kVerificationFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent states of the 2D isotropic harmonic oscillator", "cs2d"};
  app.require_subcommand(1);

  RunConfig config;
  double xi0 = 0.0;
  double eta0 = 0.0;
  std::string chirality = "retarded";
  std::string format = "csv";
  int n_max = -1;
  double half_width = 0.0;
  double t_max = 0.0;
  PhysicalUnits units;

  auto add_common = [&](CLI::App* sub) {
    auto* xi_opt = sub->add_option("--xi0", xi0, "Dimensionless x amplitude xi0 = alpha x0");
    auto* eta_opt = sub->add_option("--eta0", eta0, "Dimensionless y amplitude eta0 = alpha y0");
    sub->add_option("--chirality", chirality, "Relative phase of the y packet")
        ->check(CLI::IsMember({"retarded", "advanced"}));
    sub->add_option("--nmax", n_max, "Truncation N <= nmax (default: automatic)");
    sub->add_option("--grid-half-width", half_width, "Grid half width (default max(xi0,eta0)+6)");
    sub->add_option("--grid-points", config.grid_points, "Points per grid axis (odd, >= 33)");
    sub->add_option("--tmax", t_max, "Time span sampled (default one period 2 pi / omega)");
    sub->add_option("--tsteps", config.t_steps, "Number of sample times");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.output_path, "Output path (default standard output)");

    auto* mass = sub->add_option("--mass", units.mass, "Particle mass M");
    auto* omega = sub->add_option("--omega", units.omega, "Angular frequency omega");
    auto* hbar = sub->add_option("--hbar", units.hbar, "Reduced Planck constant");
    auto* x0 = sub->add_option("--x0", units.x0, "Physical x amplitude");
    auto* y0 = sub->add_option("--y0", units.y0, "Physical y amplitude");
    for (auto* phys : {mass, omega, hbar, x0, y0}) {
      phys->excludes(xi_opt);
      phys->excludes(eta_opt);
    }
  };

  auto* coeffs = app.add_subcommand("coeffs", "Expansion coefficients in the (H, l_z) eigenbasis");
  auto* observables = app.add_subcommand("observables", "Moments and closed-form comparisons");
  auto* evolve = app.add_subcommand("evolve", "Orbit trace and spectral-vs-closed-form error");
  auto* verify = app.add_subcommand("verify", "Run the full oracle and identity suite");
  for (auto* sub : {coeffs, observables, evolve, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const auto given = [sub](const char* name) { return sub->count(name) > 0; };
  const bool physical = given("--mass") || given("--omega") || given("--hbar") ||
                        given("--x0") || given("--y0");
  const Chirality chir = chirality == "advanced" ? Chirality::advanced : Chirality::retarded;
  try {
    if (physical) {
      config.params = to_dimensionless(units);
      config.params.chirality = chir;
    } else {
      config.params = PacketParams(xi0, eta0, chir);
    }
    config.params_given = physical || given("--xi0") || given("--eta0") || given("--chirality");
    if (given("--nmax")) config.n_max = n_max;
    if (given("--grid-half-width")) config.grid_half_width = half_width;
    if (given("--tmax")) config.t_max = t_max;
    config.format = format == "json" ? Format::json : Format::csv;
    validate(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (sub == coeffs) return cmd_coeffs(config, out, err);
    if (sub == observables) return cmd_observables(config, out, err);
    if (sub == evolve) return cmd_evolve(config, out, err);
    return cmd_verify(config, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace cs2d::cli
