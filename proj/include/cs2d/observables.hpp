#pragma once

// Angular-momentum and energy structure of a coefficient table: weighted
// moments, partial sums split by the sign of m, and the closed-form values
// they are expected to reproduce.

#include "cs2d/expansion.hpp"

#include <map>

namespace cs2d {

/// Sums split by the sign of m, each weighted by |C|^2.
struct PartialMoments {
  double nr_m_nonneg = 0.0;           // n_r over m >= 0
  double nr_m_neg = 0.0;              // n_r over m < 0
  double m_plus_nr_m_nonneg = 0.0;    // (m + n_r) over m >= 0
  double neg_m_plus_nr_m_neg = 0.0;   // (-m + n_r) over m < 0
};

/// Moments of the truncated distribution. All means are normalized by the
/// retained mass 1 - tail_mass.
struct ObservableReport {
  double mean_m = 0.0;
  double mean_abs_m = 0.0;
  double mean_nr = 0.0;
  double mean_lz = 0.0;      // hbar
  double mean_energy = 0.0;  // hbar omega
  double norm_deficit = 0.0;
  PartialMoments partials;
};

inline constexpr double kReportMaxTail = 1e-6;
inline constexpr double kIdentityMaxTail = 1e-9;

/// Throws std::domain_error when table.tail_mass >= 1e-6.
ObservableReport compute_report(const CoefficientTable& table);

/// <l_z> = s xi0 eta0 in units of hbar (s = -1 for advanced chirality).
double closed_form_lz(const PacketParams& params) noexcept;

/// <H> = (xi0^2 + eta0^2)/2 + 1 in units of hbar omega.
double closed_form_energy(const PacketParams& params) noexcept;

struct MomentIdentities {
  double a_squared = 0.0;   // nr(m>=0) + (-m+nr)(m<0)
  double b_squared = 0.0;   // nr(m<0) + (m+nr)(m>=0)
  double a2_plus_b2 = 0.0;  // 2 nr + |m|
  double signed_m = 0.0;    // m
};

/// Partial-moment combinations summed directly from the table. Throws
/// std::domain_error when table.tail_mass >= 1e-9.
MomentIdentities partial_moment_identities(const CoefficientTable& table);

/// Values the identities should take: (A^2, B^2, A^2+B^2, B^2-A^2) for the
/// retarded packet. The advanced mirror swaps the first two and negates the
/// last.
MomentIdentities expected_identities(const PacketParams& params) noexcept;

struct Marginals {
  std::map<int, double> by_m;
  std::map<int, double> by_principal;
};

Marginals marginals(const CoefficientTable& table);

/// Poisson(N; (xi0^2 + eta0^2)/2), the exact principal-number distribution.
double poisson_principal(const PacketParams& params, int principal);

}  // namespace cs2d
