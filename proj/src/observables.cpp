#include "cs2d/observables.hpp"

#include "cs2d/specialfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cs2d {

namespace {

void require_tail_below(const CoefficientTable& table, double limit, const char* who) {
  if (!(table.tail_mass < limit)) {
    throw std::domain_error(std::string(who) + ": tail mass " + std::to_string(table.tail_mass) +
                            " not below " + std::to_string(limit) + "; raise n_max");
  }
}

struct RawSums {
  double mass = 0.0;
  double m = 0.0;
  double abs_m = 0.0;
  double nr = 0.0;
  double principal_plus_one = 0.0;
  PartialMoments partials;
};

RawSums accumulate(const CoefficientTable& table) {
  RawSums s;
  for (const auto& [mode, c] : table.entries) {
    const double w = c * c;
    s.mass += w;
    s.m += w * mode.m;
    s.abs_m += w * mode.abs_m();
    s.nr += w * mode.n_r;
    s.principal_plus_one += w * (mode.principal() + 1);
    if (mode.m >= 0) {
      s.partials.nr_m_nonneg += w * mode.n_r;
      s.partials.m_plus_nr_m_nonneg += w * (mode.m + mode.n_r);
    } else {
      s.partials.nr_m_neg += w * mode.n_r;
      s.partials.neg_m_plus_nr_m_neg += w * (-mode.m + mode.n_r);
    }
  }
  // Normalize to the retained mass.
  const double inv = 1.0 / s.mass;
  s.m *= inv;
  s.abs_m *= inv;
  s.nr *= inv;
  s.principal_plus_one *= inv;
  s.partials.nr_m_nonneg *= inv;
  s.partials.nr_m_neg *= inv;
  s.partials.m_plus_nr_m_nonneg *= inv;
  s.partials.neg_m_plus_nr_m_neg *= inv;
  return s;
}

}  // namespace

ObservableReport compute_report(const CoefficientTable& table) {
  require_tail_below(table, kReportMaxTail, "compute_report");
  const RawSums s = accumulate(table);
  ObservableReport r;
  r.mean_m = s.m;
  r.mean_abs_m = s.abs_m;
  r.mean_nr = s.nr;
  r.mean_lz = s.m;
  r.mean_energy = s.principal_plus_one;
  r.norm_deficit = table.tail_mass;
  r.partials = s.partials;
  return r;
}

double closed_form_lz(const PacketParams& params) noexcept {
  return chirality_sign(params.chirality) * params.xi0 * params.eta0;
}

double closed_form_energy(const PacketParams& params) noexcept {
  return params.mean_principal() + 1.0;
}

MomentIdentities partial_moment_identities(const CoefficientTable& table) {
  require_tail_below(table, kIdentityMaxTail, "partial_moment_identities");
  const RawSums s = accumulate(table);
  MomentIdentities out;
  out.a_squared = s.partials.nr_m_nonneg + s.partials.neg_m_plus_nr_m_neg;
  out.b_squared = s.partials.nr_m_neg + s.partials.m_plus_nr_m_nonneg;
  out.a2_plus_b2 = 2.0 * s.nr + s.abs_m;
  out.signed_m = s.m;
  return out;
}

MomentIdentities expected_identities(const PacketParams& params) noexcept {
  const double a2 = params.a() * params.a();
  const double b2 = params.b() * params.b();
  if (params.chirality == Chirality::retarded) return {a2, b2, a2 + b2, b2 - a2};
  return {b2, a2, a2 + b2, a2 - b2};
}

Marginals marginals(const CoefficientTable& table) {
  Marginals out;
  for (const auto& [mode, c] : table.entries) {
    out.by_m[mode.m] += c * c;
    out.by_principal[mode.principal()] += c * c;
  }
  return out;
}

double poisson_principal(const PacketParams& params, int principal) {
  if (principal < 0) return 0.0;
  const double s = params.mean_principal();
  if (s == 0.0) return principal == 0 ? 1.0 : 0.0;
  return std::exp(-s + principal * std::log(s) - specialfn::log_factorial(principal));
}

}  // namespace cs2d
