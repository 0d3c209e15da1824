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

#ifndef DICHOTOMY_POSTERIOR_HPP
#define DICHOTOMY_POSTERIOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "dichotomy/coalition.hpp"
#include "dichotomy/errors.hpp"
#include "dichotomy/io/csv.hpp"
#include "dichotomy/numerics.hpp"
#include "dichotomy/taxpolicy.hpp"

// Statistics of the posterior employment rate Beta(a, b) = Beta(θ+s, ρ+n−s),
// and per-n reports that check its large-n behaviour under a tax policy.
namespace dichotomy {

inline double posterior_mean(const PosteriorRate& p) { return p.a / (p.a + p.b); }

/// ab/((a+b)²(a+b+1)).
inline double posterior_variance(const PosteriorRate& p) {
  const double c = p.a + p.b;
  return (p.a / c) * (p.b / c) / (c + 1.0);
}

/// (a−1)/(a+b−2), defined only when a > 1 and b > 1.
inline std::optional<double> posterior_mode(const PosteriorRate& p) {
  if (!(p.a > 1.0 && p.b > 1.0)) return std::nullopt;
  return (p.a - 1.0) / (p.a + p.b - 2.0);
}

/// E[p^k] = Π_{z=0}^{k−1} (a+z)/(a+b+z).
inline double raw_moment(const PosteriorRate& p, unsigned k) {
  double m = 1.0;
  for (unsigned z = 0; z < k; ++z) m *= (p.a + z) / (p.a + p.b + z);
  return m;
}

namespace detail {

// Beta(a, b) density divided by its value at the peak, on a window of ±40
// standard deviations around the mean. Normalizing by the integral of the
// same kernel avoids ever forming β(a, b). The log-ratio to the peak is
// taken through log1p so that a, b ~ 10⁶ do not leave rounding noise in the
// integrand larger than the quadrature tolerance.
struct BetaKernel {
  double a;
  double b;
  double peak;
  double lo;
  double hi;

  BetaKernel(double a_, double b_) : a(a_), b(b_) {
    const double mean = a / (a + b);
    const double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));
    peak = (a > 1.0 && b > 1.0) ? (a - 1.0) / (a + b - 2.0) : mean;
    lo = std::max(0.0, mean - 40.0 * sd);
    hi = std::min(1.0, mean + 40.0 * sd);
  }

  double operator()(double x) const {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    if (a < 1.0 || b < 1.0) {
      // Unbounded at an endpoint; log1p(dx/peak) would round to log(0) there.
      return std::exp((a - 1.0) * std::log(x / peak) + (b - 1.0) * std::log((1.0 - x) / (1.0 - peak)));
    }
    const double dx = x - peak;
    return std::exp((a - 1.0) * std::log1p(dx / peak) + (b - 1.0) * std::log1p(-dx / (1.0 - peak)));
  }

  template <typename F>
  static double integrate(F f, double from, double to) {
    if (!(to > from)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, from, to, 15, 1e-12);
  }
};

}  // namespace detail

/// I_x(a, b) by adaptive quadrature of the normalized density. Used when the
/// continued fraction does not converge (a, b in the millions).
inline double beta_cdf_quadrature(double x, double a, double b) {
  const detail::BetaKernel k(a, b);
  if (x <= k.lo) return 0.0;
  if (x >= k.hi) return 1.0;
  double left = 0.0;
  double right = 0.0;
  if (a < 1.0 || b < 1.0) {
    // Endpoint singularity: tanh-sinh copes where Gauss-Kronrod does not.
    boost::math::quadrature::tanh_sinh<double> ts;
    left = ts.integrate(k, k.lo, x);
    right = ts.integrate(k, x, k.hi);
  } else {
    left = detail::BetaKernel::integrate(k, k.lo, x);
    right = detail::BetaKernel::integrate(k, x, k.hi);
  }
  return left / (left + right);
}

/// I_x(a, b): continued fraction, falling back to quadrature on non-convergence.
inline double beta_cdf(double x, double a, double b) {
  try {
    return numerics::reg_inc_beta(x, a, b);
  } catch (const convergence_error&) {
    return beta_cdf_quadrature(x, a, b);
  }
}

/// Median by bisection of I_x(a, b) = 1/2, bracketed by the mean and mode.
inline double posterior_median(const PosteriorRate& p) {
  if (p.a == p.b) return 0.5;
  const double mean = posterior_mean(p);
  double lo = 0.0;
  double hi = 1.0;
  if (const auto mode = posterior_mode(p)) {
    lo = std::min(mean, *mode);
    hi = std::max(mean, *mode);
    if (beta_cdf(lo, p.a, p.b) > 0.5) lo = 0.0;
    if (beta_cdf(hi, p.a, p.b) < 0.5) hi = 1.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (beta_cdf(mid, p.a, p.b) < 0.5) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Semivariances {
  double lower;
  double upper;
};

/// Lower and upper semivariance about the mean μ.
///
/// Integrating ∫₀^μ (x−μ)² f(x) dx by parts gives exactly σ²·I_μ(a+1, b+1),
/// which avoids the cancellation between the truncated raw moments.
inline Semivariances semivariances(const PosteriorRate& p) {
  p.validate();
  const double var = posterior_variance(p);
  const double lower = var * beta_cdf(posterior_mean(p), p.a + 1.0, p.b + 1.0);
  return {lower, var - lower};
}

/// Mean absolute deviation about the mean, 2a^a b^b/(β(a,b)(a+b)^(a+b+1)).
///
/// Evaluated through Stirling remainders ε so no term of size x·ln x is formed:
/// ln MAD = ln 2 − ½ln 2π + ½(ln a + ln b) − (3/2)ln(a+b) − ε(a) − ε(b) + ε(a+b).
inline double mad_closed_form(const PosteriorRate& p) {
  p.validate();
  using numerics::stirling_remainder;
  const double c = p.a + p.b;
  const double log_mad = std::numbers::ln2 - 0.5 * std::log(2.0 * std::numbers::pi) +
                         0.5 * (std::log(p.a) + std::log(p.b)) - 1.5 * std::log(c) -
                         stirling_remainder(p.a) - stirling_remainder(p.b) + stirling_remainder(c);
  return std::exp(log_mad);
}

/// 2a^a b^b/(β(a,b)(a+b)^(a+b)), the variant without the extra (a+b) factor.
/// It equals (a+b)·mad_closed_form for every a, b; kept for comparison.
inline double mad_printed_form(const PosteriorRate& p) { return (p.a + p.b) * mad_closed_form(p); }

struct PosteriorSummary {
  double a = 0.0;
  double b = 0.0;
  double mean = 0.0;
  std::optional<double> mode;  ///< empty when a ≤ 1 or b ≤ 1
  double median = 0.0;
  double variance = 0.0;
  double lower_semivariance = 0.0;
  double upper_semivariance = 0.0;
  double mad = 0.0;
  std::vector<double> moments;  ///< E[p^k], k = 1..K
};

inline PosteriorSummary summarize(const PosteriorRate& p, unsigned moment_count = 4) {
  p.validate();
  PosteriorSummary s;
  s.a = p.a;
  s.b = p.b;
  s.mean = posterior_mean(p);
  s.mode = posterior_mode(p);
  s.median = posterior_median(p);
  s.variance = posterior_variance(p);
  const auto semi = semivariances(p);
  s.lower_semivariance = semi.lower;
  s.upper_semivariance = semi.upper;
  s.mad = mad_closed_form(p);
  s.moments.resize(moment_count);
  for (unsigned k = 1; k <= moment_count; ++k) s.moments[k - 1] = raw_moment(p, k);
  return s;
}

/// Posterior after observing s = nω under the (θ, ρ) implied by a policy.
/// Throws infeasible_error when that (θ, ρ) is not a valid prior.
inline PosteriorRate posterior_from_policy(std::uint64_t n, double omega, double delta, double tau) {
  const auto sol = solve_theta_rho(n, omega, delta, tau);
  if (!sol.valid) {
    std::ostringstream os;
    os.precision(17);
    os << "policy (n=" << n << ", omega=" << omega << ", delta=" << delta << ", tau=" << tau
       << ") gives theta=" << sol.theta << ", rho=" << sol.rho << ", which is not a valid prior";
    throw infeasible_error(os.str());
  }
  const double nd = static_cast<double>(n);
  return PosteriorRate::from_counts(sol.theta, sol.rho, nd, nd * omega);
}

// ---------------------------------------------------------------------------
// Large-n verification reports.

struct VerificationRow {
  std::uint64_t n = 0;
  double tau = 0.0;
  double theta = 0.0;
  double rho = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double n_var = 0.0;
  double lower_semi = 0.0;
  double upper_semi = 0.0;
  double mad = 0.0;
  double statistic = 0.0;  ///< the quantity compared against `target`
  double target = 0.0;
  double abs_error = 0.0;
};

struct Gate {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  int theorem = 0;
  std::string statistic;  ///< what VerificationRow::statistic holds
  std::vector<VerificationRow> rows;
  std::vector<Gate> gates;

  bool passed() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.passed; });
  }
  const Gate* first_failure() const {
    for (const auto& g : gates) {
      if (!g.passed) return &g;
    }
    return nullptr;
  }
};

/// Least-squares slope of ln y against ln x; NaN with fewer than two usable points.
inline double log_log_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0 && y[k] > 0.0)) continue;
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::nan("");
  const double md = static_cast<double>(m);
  const double den = md * sxx - sx * sx;
  return den == 0.0 ? std::nan("") : (md * sxy - sx * sy) / den;
}

namespace detail {

inline std::string fmt(double x) { return io::format_real(x); }

inline void require_fair_interval(double omega, double delta, double tau) {
  const double rule = asymptotic_tax_rule(omega, delta);
  if (!(tau > rule && tau < 1.0)) {
    throw std::domain_error("tau = " + fmt(tau) + " must lie strictly between 1 - omega + delta*omega = " +
                            fmt(rule) + " and 1");
  }
}

inline void require_n_sequence(std::span<const std::uint64_t> ns) {
  if (ns.empty()) throw std::invalid_argument("n sequence must not be empty");
  for (std::size_t k = 1; k < ns.size(); ++k) {
    if (ns[k] <= ns[k - 1]) throw std::invalid_argument("n sequence must be strictly increasing");
  }
}

// Posterior row for one n and τ; statistic/target/abs_error are left to the caller.
inline VerificationRow policy_row(std::uint64_t n, double omega, double delta, double tau) {
  const auto sol = solve_theta_rho(n, omega, delta, tau);
  if (!sol.valid) {
    throw infeasible_error("n = " + std::to_string(n) + ", tau = " + fmt(tau) + ": theta = " + fmt(sol.theta) +
                           ", rho = " + fmt(sol.rho) + " is not a valid prior");
  }
  const double nd = static_cast<double>(n);
  const auto post = PosteriorRate::from_counts(sol.theta, sol.rho, nd, nd * omega);
  VerificationRow row;
  row.n = n;
  row.tau = tau;
  row.theta = sol.theta;
  row.rho = sol.rho;
  row.mean = posterior_mean(post);
  row.variance = posterior_variance(post);
  row.n_var = nd * row.variance;
  const auto semi = semivariances(post);
  row.lower_semi = semi.lower;
  row.upper_semi = semi.upper;
  row.mad = mad_closed_form(post);
  return row;
}

// μ_n − ω = (θ(1−ω) − ωρ)/(θ+ρ+n) at s = nω, without subtracting two near-equal means.
inline double mean_offset(const VerificationRow& row, double omega) {
  return (row.theta * (1.0 - omega) - omega * row.rho) / (row.theta + row.rho + static_cast<double>(row.n));
}

inline bool nonincreasing(const std::vector<VerificationRow>& rows, double VerificationRow::*field) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].*field > rows[k - 1].*field * (1.0 + 1e-12)) return false;
  }
  return true;
}

}  // namespace detail

/// Mean → ω and variance → 0 for τ strictly inside (1 − ω + δω, 1); also the
/// raw moments E[p^k] → ω^k, k ≤ 4, within 1e-3 at the largest n.
inline VerificationReport verify_degenerate_limit(double omega, double delta, double tau,
                                                  std::span<const std::uint64_t> ns) {
  detail::require_fair_interval(omega, delta, tau);
  detail::require_n_sequence(ns);
  VerificationReport rep;
  rep.theorem = 2;
  rep.statistic = "abs(mean - omega)";
  for (auto n : ns) {
    auto row = detail::policy_row(n, omega, delta, tau);
    row.statistic = std::fabs(detail::mean_offset(row, omega));
    row.target = 0.0;
    row.abs_error = row.statistic;
    rep.rows.push_back(row);
  }
  rep.gates.push_back({"mean error nonincreasing", detail::nonincreasing(rep.rows, &VerificationRow::abs_error),
                       "|mean - omega| across n"});
  rep.gates.push_back({"variance nonincreasing", detail::nonincreasing(rep.rows, &VerificationRow::variance),
                       "variance across n"});
  const auto& last = rep.rows.back();
  const double nd = static_cast<double>(last.n);
  const auto post = PosteriorRate::from_counts(last.theta, last.rho, nd, nd * omega);
  double worst = 0.0;
  for (unsigned k = 1; k <= 4; ++k) worst = std::max(worst, std::fabs(raw_moment(post, k) - std::pow(omega, k)));
  rep.gates.push_back({"moments converge", worst <= 1e-3,
                       "max_k<=4 |E[p^k] - omega^k| = " + detail::fmt(worst) + " at n = " + std::to_string(last.n)});
  return rep;
}

/// n·Var → ω(1−ω)Δ with error O(1/n): the fitted log-log slope of
/// |n·Var − ω(1−ω)Δ| against n must lie in [−1.3, −0.7].
inline VerificationReport verify_asymptotic_variance(double omega, double delta, double tau,
                                                     std::span<const std::uint64_t> ns) {
  detail::require_fair_interval(omega, delta, tau);
  detail::require_n_sequence(ns);
  VerificationReport rep;
  rep.theorem = 3;
  rep.statistic = "n*variance";
  const double target = omega * (1.0 - omega) * delta_shorthands(omega, tau, delta).d;
  std::vector<double> x, y;
  for (auto n : ns) {
    auto row = detail::policy_row(n, omega, delta, tau);
    row.statistic = row.n_var;
    row.target = target;
    row.abs_error = std::fabs(row.n_var - target);
    x.push_back(static_cast<double>(n));
    y.push_back(row.abs_error);
    rep.rows.push_back(row);
  }
  const double slope = log_log_slope(x, y);
  rep.gates.push_back({"error slope in [-1.3, -0.7]", slope >= -1.3 && slope <= -0.7,
                       "fitted slope " + detail::fmt(slope)});
  return rep;
}

/// Under τ_n = 1 − ω + δω + k·c/n (k > 1) the variance expansion gives
/// n·Var ≈ [ω(1−ω)k·c − ω(1−ω)c]/n; checked within 10% at the largest n.
inline VerificationReport verify_offset_rule_variance(double omega, double delta, double k,
                                                      std::span<const std::uint64_t> ns) {
  if (!(k > 1.0)) throw std::domain_error("offset rule check needs k > 1 for a valid prior");
  detail::require_n_sequence(ns);
  VerificationReport rep;
  rep.theorem = 3;
  rep.statistic = "n*variance (offset rule)";
  const double c = rule_offset_constant(omega, delta);
  for (auto n : ns) {
    const double nd = static_cast<double>(n);
    const double tau = tax_rule_with_offset(nd, omega, delta, k);
    auto row = detail::policy_row(n, omega, delta, tau);
    row.statistic = row.n_var;
    row.target = omega * (1.0 - omega) * (k - 1.0) * c / nd;
    row.abs_error = std::fabs(row.n_var - row.target);
    rep.rows.push_back(row);
  }
  const auto& last = rep.rows.back();
  const double rel = last.abs_error / std::fabs(last.target);
  rep.gates.push_back({"expansion within 10%", rel <= 0.1,
                       "relative error " + detail::fmt(rel) + " at n = " + std::to_string(last.n)});
  return rep;
}

/// n·(lower semivariance) inside [(1/2 − 1/√(2π))·ω(1−ω)Δ, ω(1−ω)Δ], with a
/// slack of 10% of the upper bound at n ≥ 10⁵; the upper semivariance must
/// satisfy the same sandwich.
inline VerificationReport verify_semivariance_sandwich(double omega, double delta, double tau,
                                                       std::span<const std::uint64_t> ns) {
  detail::require_fair_interval(omega, delta, tau);
  detail::require_n_sequence(ns);
  VerificationReport rep;
  rep.theorem = 4;
  rep.statistic = "n*lower_semivariance";
  const double upper = omega * (1.0 - omega) * delta_shorthands(omega, tau, delta).d;
  const double lower = (0.5 - 1.0 / std::sqrt(2.0 * std::numbers::pi)) * upper;
  const double slack = 0.1 * upper;
  bool lower_ok = true;
  bool upper_ok = true;
  std::string where;
  for (auto n : ns) {
    auto row = detail::policy_row(n, omega, delta, tau);
    const double nd = static_cast<double>(n);
    row.statistic = nd * row.lower_semi;
    row.target = upper;
    row.abs_error = std::max({0.0, lower - row.statistic, row.statistic - upper});
    if (n >= 100000) {
      const double up = nd * row.upper_semi;
      if (row.statistic < lower - slack || row.statistic > upper + slack) {
        lower_ok = false;
        where += " n=" + std::to_string(n) + " lower";
      }
      if (up < lower - slack || up > upper + slack) {
        upper_ok = false;
        where += " n=" + std::to_string(n) + " upper";
      }
    }
    rep.rows.push_back(row);
  }
  rep.gates.push_back({"lower semivariance in sandwich", lower_ok,
                       "bounds [" + detail::fmt(lower) + ", " + detail::fmt(upper) + "]" + where});
  rep.gates.push_back({"upper semivariance in sandwich", upper_ok,
                       "bounds [" + detail::fmt(lower) + ", " + detail::fmt(upper) + "]" + where});
  return rep;
}

/// n(μ_n − ω) → (1−τ)(2ω−1) + ω²(δ−1) (within 5% at the largest n), and
/// μ_n decreasing in τ at the largest n. Requires ω ∈ (1/2, 1).
inline VerificationReport verify_posterior_mean_expansion(double omega, double delta, double tau,
                                                          std::span<const std::uint64_t> ns) {
  if (!(omega > 0.5 && omega < 1.0)) {
    throw std::domain_error("the posterior-mean monotonicity check requires omega in (0.5, 1)");
  }
  detail::require_fair_interval(omega, delta, tau);
  detail::require_n_sequence(ns);
  VerificationReport rep;
  rep.theorem = 5;
  rep.statistic = "n*(mean - omega)";
  const double target = (1.0 - tau) * (2.0 * omega - 1.0) + omega * omega * (delta - 1.0);
  for (auto n : ns) {
    auto row = detail::policy_row(n, omega, delta, tau);
    row.statistic = static_cast<double>(n) * detail::mean_offset(row, omega);
    row.target = target;
    row.abs_error = std::fabs(row.statistic - target);
    rep.rows.push_back(row);
  }
  const auto& last = rep.rows.back();
  const double rel = last.abs_error / std::fabs(target);
  rep.gates.push_back({"expansion within 5%", rel <= 0.05,
                       "relative error " + detail::fmt(rel) + " at n = " + std::to_string(last.n)});
  const double step = 1e-3 * (1.0 - tau);
  const auto bumped = detail::policy_row(last.n, omega, delta, tau + step);
  const double slope = (detail::mean_offset(bumped, omega) - detail::mean_offset(last, omega)) / step;
  rep.gates.push_back({"mean decreasing in tau", slope < 0.0, "finite-difference slope " + detail::fmt(slope)});
  return rep;
}

/// MAD²/Var → 2/π; within 1e-2 at the largest n, and the MAD itself → 0.
inline VerificationReport verify_mad_ratio(double omega, double delta, double tau,
                                           std::span<const std::uint64_t> ns) {
  detail::require_fair_interval(omega, delta, tau);
  detail::require_n_sequence(ns);
  VerificationReport rep;
  rep.theorem = 6;
  rep.statistic = "mad^2/variance";
  const double target = 2.0 / std::numbers::pi;
  for (auto n : ns) {
    auto row = detail::policy_row(n, omega, delta, tau);
    row.statistic = row.mad * row.mad / row.variance;
    row.target = target;
    row.abs_error = std::fabs(row.statistic - target);
    rep.rows.push_back(row);
  }
  const auto& last = rep.rows.back();
  rep.gates.push_back({"ratio within 1e-2 of 2/pi", last.abs_error <= 1e-2,
                       "|ratio - 2/pi| = " + detail::fmt(last.abs_error) + " at n = " + std::to_string(last.n)});
  rep.gates.push_back({"mad nonincreasing", detail::nonincreasing(rep.rows, &VerificationRow::mad), "MAD across n"});
  return rep;
}

inline void write_report_csv(std::ostream& os, const VerificationReport& rep) {
  io::write_row(os, {"n", "theta", "rho", "mean", "variance", "n_var", "lower_semi", "upper_semi", "mad",
                     "statistic", "target", "abs_error"});
  for (const auto& r : rep.rows) {
    io::write_row(os, {std::to_string(r.n), io::format_real(r.theta), io::format_real(r.rho),
                       io::format_real(r.mean), io::format_real(r.variance), io::format_real(r.n_var),
                       io::format_real(r.lower_semi), io::format_real(r.upper_semi), io::format_real(r.mad),
                       io::format_real(r.statistic), io::format_real(r.target), io::format_real(r.abs_error)});
  }
}

}  // namespace dichotomy

#endif  // DICHOTOMY_POSTERIOR_HPP
