// Copyright 2026 The Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICHOTOMY_TAXPOLICY_HPP
#define DICHOTOMY_TAXPOLICY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dichotomy/errors.hpp"
#include "dichotomy/io/csv.hpp"
#include "dichotomy/parallel.hpp"

// Balanced-budget tax system. With s employed out of n, a tax rate τ and a
// reserve ratio δ, the prior (θ, ρ) must satisfy both
//   τ = 1 − (s(θ+ρ−1) − nθ)/(ρ+n−s−1)          (employment benefits)
//   τ = δ + (s(θ+ρ−1) − n(θ−1))/(θ+s−1)        (welfare plus reserve)
namespace dichotomy {

/// Shorthand polynomials in (ω, τ, δ) used by the closed-form solver.
struct DeltaShorthands {
  double d;   ///< Δ  = ω + τ − δω − 1
  double d1;  ///< Δ1 = δω − ω − τ + 2
  double d2;  ///< Δ2 = δωτ − 2δω − ωτ² + 2ωτ + τ − 1
  double d3;  ///< Δ3 = (1 − τ)(δ − τ)
  double d4;  ///< Δ4 = −δωτ + δω + δτ − 2δ + ωτ² − 2ωτ + ω − τ² + 3τ − 1
  double d5;  ///< Δ5 = −δω + δτ − 2δ + ω − τ² + 4τ − 2
  double d6;  ///< Δ6 = −ωδ + ωτ + τ − 1
  double d7;  ///< Δ7 = −δ − ωτ + 2τ + ω − 1
  double d8;  ///< Δ8 = −δω − δ + ω + 3τ − 2
  double d9;  ///< Δ9 = −2δω − δ + 2ω + 4τ − 3
};

namespace detail {

template <typename Real>
struct Shorthands {
  Real d, d1, d2, d3, d4, d5, d6, d7, d8, d9;
};

// Each quantity from its own defining polynomial; the linear relations
// between them are left for tests to confirm.
template <typename Real>
Shorthands<Real> shorthands(Real w, Real t, Real e) {
  Shorthands<Real> s;
  s.d = w + t - e * w - 1;
  s.d1 = e * w - w - t + 2;
  s.d2 = e * w * t - 2 * e * w - w * t * t + 2 * w * t + t - 1;
  s.d3 = (1 - t) * (e - t);
  s.d4 = -e * w * t + e * w + e * t - 2 * e + w * t * t - 2 * w * t + w - t * t + 3 * t - 1;
  s.d5 = -e * w + e * t - 2 * e + w - t * t + 4 * t - 2;
  s.d6 = -w * e + w * t + t - 1;
  s.d7 = -e - w * t + 2 * t + w - 1;
  s.d8 = -e * w - e + w + 3 * t - 2;
  s.d9 = -2 * e * w - e + 2 * w + 4 * t - 3;
  return s;
}

}  // namespace detail

inline DeltaShorthands delta_shorthands(double omega, double tau, double delta) {
  const auto s = detail::shorthands<double>(omega, tau, delta);
  return {s.d, s.d1, s.d2, s.d3, s.d4, s.d5, s.d6, s.d7, s.d8, s.d9};
}

/// τ from the employment-benefit identity: 1 − (s(θ+ρ−1) − nθ)/(ρ+n−s−1).
/// s may be real (s = nω); it must lie in [1, n−1].
inline double tax_rate_from_benefits(double n, double s, double theta, double rho) {
  if (!(s >= 1.0 && s <= n - 1.0)) {
    throw std::out_of_range("tax_rate_from_benefits: s must lie in [1, n-1]");
  }
  const double denom = rho + n - s - 1.0;
  if (std::fabs(denom) <= 1e-14 * std::max(1.0, std::fabs(rho) + n)) {
    throw singular_error("tax_rate_from_benefits: rho + n - s - 1 = 0");
  }
  return 1.0 - (s * (theta + rho - 1.0) - n * theta) / denom;
}

/// τ from the welfare identity: δ + (s(θ+ρ−1) − n(θ−1))/(θ+s−1).
inline double tax_rate_from_welfare(double n, double s, double theta, double rho, double delta) {
  if (!(s >= 1.0 && s <= n - 1.0)) {
    throw std::out_of_range("tax_rate_from_welfare: s must lie in [1, n-1]");
  }
  const double denom = theta + s - 1.0;
  if (std::fabs(denom) <= 1e-14 * std::max(1.0, std::fabs(theta) + s)) {
    throw singular_error("tax_rate_from_welfare: theta + s - 1 = 0");
  }
  return delta + (s * (theta + rho - 1.0) - n * (theta - 1.0)) / denom;
}

inline bool is_feasible_tax_rate(double tau) { return tau >= 0.0 && tau <= 1.0; }

struct PolicyInputs {
  std::uint64_t n = 0;
  double omega = 0.0;
  double delta = 0.0;
  double tau = 0.0;
};

/// Closed-form (θ, ρ) for a policy, with the backward errors of both
/// identities attached.
struct TaxSolution {
  double theta = 0.0;
  double rho = 0.0;
  PolicyInputs inputs;
  DeltaShorthands shorthands{};
  double denominator = 0.0;  ///< nΔ + Δ3
  double residual_benefits = 0.0;
  double residual_welfare = 0.0;
  bool valid = false;             ///< θ > 0, ρ > 0, τ ∈ [0, 1], residuals ≤ kResidualGate
  bool on_singular_line = false;  ///< |Δ| ≤ 1e-12: τ sits on 1 − ω + δω

  static constexpr double kResidualGate = 1e-9;
};

/// Relative residuals of the two identities in their cleared-denominator
/// forms, (1−τ)(ρ+n−s−1) = s(θ+ρ−1) − nθ and (τ−δ)(θ+s−1) = s(θ+ρ−1) − n(θ−1),
/// each divided by the sum of its term magnitudes. Evaluating τ directly
/// would cancel terms of size n²/Δ.
struct Residuals {
  double benefits;
  double welfare;
};

inline Residuals policy_residuals(double n, double omega, double delta, double tau, double theta,
                                  double rho) {
  using R = long double;
  const R nn = n;
  const R s = nn * static_cast<R>(omega);
  const R th = theta;
  const R rh = rho;
  const R t = tau;
  const R e = delta;
  const R lhs8 = (1 - t) * (rh + nn - s - 1);
  const R rhs8 = s * (th + rh - 1) - nn * th;
  const R scale8 = std::fabs(lhs8) + std::fabs(s * th) + std::fabs(s * rh) + s + std::fabs(nn * th);
  const R lhs9 = (t - e) * (th + s - 1);
  const R rhs9 = s * (th + rh - 1) - nn * (th - 1);
  const R scale9 =
      std::fabs(lhs9) + std::fabs(s * th) + std::fabs(s * rh) + s + std::fabs(nn * th) + nn;
  auto rel = [](R diff, R scale) { return scale > 0 ? static_cast<double>(std::fabs(diff) / scale) : 0.0; };
  return {rel(lhs8 - rhs8, scale8), rel(lhs9 - rhs9, scale9)};
}

namespace detail {

inline void validate_policy(std::uint64_t n, double omega, double delta, double tau) {
  if (n < 1) throw std::domain_error("policy: n must be at least 1");
  if (!(omega > 0.0 && omega < 1.0)) throw std::domain_error("policy: omega must lie in (0, 1)");
  if (!(delta > -1.0 && delta < 1.0)) throw std::domain_error("policy: delta must lie in (-1, 1)");
  if (!std::isfinite(tau)) throw std::domain_error("policy: tau must be finite");
}

inline bool denominator_is_singular(double denominator, double n) {
  return std::fabs(denominator) < 1e-12 * n;
}

}  // namespace detail

/// Solves both identities for (θ, ρ) at s = nω:
///   θ = (n²ωΔ1 + nΔ2 + Δ3)/(nΔ + Δ3),  ρ = (n²(1−ω)Δ1 + nΔ4 + Δ3)/(nΔ + Δ3).
/// s need not be integral. Throws singular_error when |nΔ + Δ3| < 1e-12·n.
/// A τ outside [0, 1] is solved and flagged invalid, never clamped.
inline TaxSolution solve_theta_rho(std::uint64_t n, double omega, double delta, double tau) {
  detail::validate_policy(n, omega, delta, tau);
  using R = long double;
  const auto s = detail::shorthands<R>(omega, tau, delta);
  const R nn = static_cast<R>(n);
  const R denom = nn * s.d + s.d3;
  if (detail::denominator_is_singular(static_cast<double>(denom), static_cast<double>(n))) {
    std::ostringstream os;
    os.precision(17);
    os << "solve_theta_rho: n*Delta + Delta3 = " << static_cast<double>(denom) << " is singular at (n="
       << n << ", omega=" << omega << ", delta=" << delta << ", tau=" << tau << ")";
    throw singular_error(os.str());
  }
  TaxSolution sol;
  sol.inputs = {n, omega, delta, tau};
  sol.shorthands = delta_shorthands(omega, tau, delta);
  sol.denominator = static_cast<double>(denom);
  const R w = omega;
  sol.theta = static_cast<double>((nn * nn * w * s.d1 + nn * s.d2 + s.d3) / denom);
  sol.rho = static_cast<double>((nn * nn * (1 - w) * s.d1 + nn * s.d4 + s.d3) / denom);
  const auto res = policy_residuals(static_cast<double>(n), omega, delta, tau, sol.theta, sol.rho);
  sol.residual_benefits = res.benefits;
  sol.residual_welfare = res.welfare;
  sol.on_singular_line = std::fabs(sol.shorthands.d) <= 1e-12;
  sol.valid = sol.theta > 0.0 && sol.rho > 0.0 && is_feasible_tax_rate(tau) &&
              res.benefits <= TaxSolution::kResidualGate && res.welfare <= TaxSolution::kResidualGate;
  return sol;
}

/// τ = 1 − ω + δω: the limit rule, which is also the line Δ = 0.
inline double asymptotic_tax_rule(double omega, double delta) { return 1.0 - omega + delta * omega; }

/// c = ω(1−ω)(1−δ)², the scale of the finite-n correction.
inline double rule_offset_constant(double omega, double delta) {
  return omega * (1.0 - omega) * (1.0 - delta) * (1.0 - delta);
}

/// τ = 1 − ω + δω + k·c/n. The exact finite-n constant lies between k = 1
/// and k = 2; neither end is privileged here.
inline double tax_rule_with_offset(double n, double omega, double delta, double k) {
  if (!(n >= 1.0)) throw std::domain_error("tax rule: n must be at least 1");
  return asymptotic_tax_rule(omega, delta) + k * rule_offset_constant(omega, delta) / n;
}

/// τ = 1 − ω + δω + ω(1−ω)(1−δ)²/n.
inline double corrected_tax_rule(double n, double omega, double delta) {
  return tax_rule_with_offset(n, omega, delta, 1.0);
}

/// Integer employment count round(nω); `rounded` is set when nω is farther
/// than 1e-9 from an integer.
struct EmploymentCount {
  std::uint64_t s = 0;
  bool rounded = false;
};

inline EmploymentCount employment_count(std::uint64_t n, double omega) {
  const double exact = static_cast<double>(n) * omega;
  const double nearest = std::round(exact);
  return {static_cast<std::uint64_t>(std::max(0.0, nearest)), std::fabs(exact - nearest) > 1e-9};
}

/// One grid point of the feasible-set probe.
struct ProbeRow {
  double omega = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  std::uint64_t n = 0;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  double d = 0.0;            ///< Δ
  double denominator = 0.0;  ///< nΔ + Δ3
  bool valid = false;
  bool singular = false;
  double residual_benefits = std::numeric_limits<double>::quiet_NaN();
  double residual_welfare = std::numeric_limits<double>::quiet_NaN();
};

/// Closed-form (θ, ρ) at every τ in the grid for one (n, ω, δ).
///
/// Singular points stay in the table. A point is singular when
/// |nΔ + Δ3| < 1e-12·n, or when nΔ + Δ3 changes sign between it and a grid
/// neighbour and it is the closer of the two to the root.
inline std::vector<ProbeRow> feasible_set_probe(std::uint64_t n, double omega, double delta,
                                                std::span<const double> tau_grid) {
  std::vector<ProbeRow> rows(tau_grid.size());
  for (std::size_t k = 0; k < tau_grid.size(); ++k) {
    const double tau = tau_grid[k];
    detail::validate_policy(n, omega, delta, tau);
    auto& row = rows[k];
    row.omega = omega;
    row.tau = tau;
    row.delta = delta;
    row.n = n;
    const auto s = delta_shorthands(omega, tau, delta);
    row.d = s.d;
    row.denominator = static_cast<double>(static_cast<long double>(n) * s.d + s.d3);
    if (detail::denominator_is_singular(row.denominator, static_cast<double>(n))) {
      row.singular = true;
      continue;
    }
    const auto sol = solve_theta_rho(n, omega, delta, tau);
    row.theta = sol.theta;
    row.rho = sol.rho;
    row.valid = sol.valid;
    row.residual_benefits = sol.residual_benefits;
    row.residual_welfare = sol.residual_welfare;
  }
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    const double a = rows[k].denominator;
    const double b = rows[k + 1].denominator;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      auto& closer = std::fabs(a) <= std::fabs(b) ? rows[k] : rows[k + 1];
      closer.singular = true;
      closer.valid = false;
    }
  }
  return rows;
}

/// Probe over an ω grid × τ grid, rows ordered ω-major. Rows for each ω are
/// computed independently, so the table does not depend on `threads`.
inline std::vector<ProbeRow> feasible_set_sweep(std::uint64_t n, double delta,
                                                std::span<const double> omega_grid,
                                                std::span<const double> tau_grid,
                                                std::size_t threads = 1) {
  std::vector<std::vector<ProbeRow>> blocks(omega_grid.size());
  parallel_for(omega_grid.size(), threads, [&](std::size_t k) {
    blocks[k] = feasible_set_probe(n, omega_grid[k], delta, tau_grid);
  });
  std::vector<ProbeRow> out;
  out.reserve(omega_grid.size() * tau_grid.size());
  for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline void write_probe_csv(std::ostream& os, std::span<const ProbeRow> rows) {
  io::write_row(os, {"omega", "tau", "delta", "n", "theta", "rho", "Delta", "valid", "residual8",
                     "residual9", "singular"});
  for (const auto& r : rows) {
    io::write_row(os, {io::format_real(r.omega), io::format_real(r.tau), io::format_real(r.delta),
                       std::to_string(r.n), io::format_real(r.theta), io::format_real(r.rho),
                       io::format_real(r.d), io::format_bool(r.valid),
                       io::format_real(r.residual_benefits), io::format_real(r.residual_welfare),
                       io::format_bool(r.singular)});
  }
}

}  // namespace dichotomy

#endif  // DICHOTOMY_TAXPOLICY_HPP
