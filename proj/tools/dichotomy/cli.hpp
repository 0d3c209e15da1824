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

#ifndef DICHOTOMY_TOOLS_CLI_HPP
#define DICHOTOMY_TOOLS_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dichotomy/dichotomy.hpp"

// Command-line front end. run() takes the arguments after the program name
// and returns the process exit code, so tests can drive it in-process.
namespace dichotomy::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInfeasible = 3,
  kData = 4,
  kCapacity = 5,
  kVerifyFailed = 6,
};

/// Bad flag values that CLI11 cannot catch itself.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input data.
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw usage_error(what + ": not a number: '" + s + "'");
  }
}

inline std::uint64_t to_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(s, &used);
    if (used != s.size() || x < 0) throw std::invalid_argument(s);
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw usage_error(what + ": not a non-negative integer: '" + s + "'");
  }
}

inline std::vector<double> to_reals(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) out.push_back(to_real(part, what));
  return out;
}

/// Parses a family spec such as `majority:5` or `weighted:4:3,2,1`; returns
/// nullopt when the text does not name a known family.
inline std::optional<Game> parse_family(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string name = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ':');
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw usage_error("family '" + name + "' expects " + std::to_string(k) + " argument(s)");
  };
  if (name == "unanimity") {
    need(1);
    return Game::unanimity(to_count(args[0], "unanimity n"));
  }
  if (name == "majority") {
    need(1);
    return Game::majority(to_count(args[0], "majority n"));
  }
  if (name == "kofn") {
    need(2);
    return Game::k_out_of_n(to_count(args[0], "kofn n"), to_count(args[1], "kofn k"));
  }
  if (name == "weighted") {
    need(2);
    return Game::weighted_voting(to_reals(args[1], "weights"), to_real(args[0], "quota"));
  }
  if (name == "additive") {
    need(1);
    return Game::additive(to_reals(args[0], "additive values"));
  }
  if (name == "dictator") {
    need(1);
    const auto n = to_count(args[0], "dictator n");
    if (n < 1) throw usage_error("dictator: n must be at least 1");
    std::vector<double> w(n, 0.0);
    w[0] = 1.0;
    return Game::weighted_voting(std::move(w), 1.0);
  }
  if (name == "symmetric") {
    need(1);
    return Game::size_symmetric(to_reals(args[0], "values by size"));
  }
  return std::nullopt;
}

/// A family spec, or else the path of a dense-game JSON file.
inline Game load_game(const std::string& spec) {
  if (auto g = parse_family(spec)) return *g;
  std::ifstream in(spec);
  if (!in) throw usage_error("'" + spec + "' is neither a game family nor a readable file");
  try {
    return dense_game_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw data_error(spec + ": " + e.what());
  }
}

inline CostCurve parse_curve(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "power") return CostCurve::power(to_real(parts[1], "power exponent"));
  if (parts.size() == 3 && parts[0] == "power") {
    return CostCurve::power(to_real(parts[1], "power exponent"), to_real(parts[2], "power scale"));
  }
  if (parts.size() == 2 && parts[0] == "linear") return CostCurve::linear(to_real(parts[1], "linear slope"));
  if (parts.size() == 2 && parts[0] == "table") {
    // table:x1,x2,...;y1,y2,...
    const auto xy = split(parts[1], ';');
    if (xy.size() != 2) throw usage_error("table curve expects table:x1,x2,...;y1,y2,...");
    return CostCurve::table(to_reals(xy[0], "table x"), to_reals(xy[1], "table y"));
  }
  throw usage_error("unknown cost curve '" + spec + "' (use power:P[:SCALE], linear:A or table:XS;YS)");
}

inline std::vector<double> linspace(double lo, double hi, std::size_t points, const std::string& what) {
  if (!(lo <= hi)) throw usage_error(what + ": min must not exceed max");
  if (lo == hi) return {lo};
  if (points < 2) throw usage_error(what + ": a non-degenerate range needs a resolution of at least 2");
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    out[k] = k + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  return out;
}

inline std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw data_error("cannot open output file: " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

}  // namespace detail

struct TaxRateArgs {
  double omega = 0.0;
  double delta = 0.0;
  std::uint64_t n = 0;
};

inline int cmd_tax_rate(const TaxRateArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.omega > 0.0 && a.omega < 1.0)) throw usage_error("--omega must lie in (0, 1)");
  if (!(a.delta > -1.0 && a.delta < 1.0)) throw usage_error("--delta must lie in (-1, 1)");
  const double rule = asymptotic_tax_rule(a.omega, a.delta);
  if (a.n == 0) {
    io::write_row(out, {"omega", "delta", "tau_asymptotic"});
    io::write_row(out, {io::format_real(a.omega), io::format_real(a.delta), io::format_real(rule)});
    return kOk;
  }
  const double nd = static_cast<double>(a.n);
  const double corrected = corrected_tax_rule(nd, a.omega, a.delta);
  const double offset2 = tax_rule_with_offset(nd, a.omega, a.delta, 2.0);
  const auto sol = solve_theta_rho(a.n, a.omega, a.delta, offset2);
  io::write_row(out, {"omega", "delta", "n", "tau_asymptotic", "tau_corrected", "tau_offset2", "theta", "rho",
                      "valid"});
  io::write_row(out, {io::format_real(a.omega), io::format_real(a.delta), std::to_string(a.n), io::format_real(rule),
                      io::format_real(corrected), io::format_real(offset2), io::format_real(sol.theta),
                      io::format_real(sol.rho), io::format_bool(sol.valid)});
  if (!sol.valid) {
    err << "infeasible: the 2c/n rule gives theta = " << io::format_real(sol.theta)
        << ", rho = " << io::format_real(sol.rho) << "\n";
    return kInfeasible;
  }
  return kOk;
}

struct SeriesArgs {
  std::string path;
  std::optional<double> delta;
  std::uint64_t n = 0;
  std::string out_path;
};

inline int cmd_series(const SeriesArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n == 0) throw usage_error("--n must be at least 1");
  if (a.delta && !(*a.delta > -1.0 && *a.delta < 1.0)) throw usage_error("--delta must lie in (-1, 1)");
  std::ifstream in(a.path);
  if (!in) throw data_error("cannot open series file: " + a.path);
  const auto table = io::read_csv(in);
  const auto c_period = table.column("period");
  const auto c_omega = table.column("omega");
  const auto c_delta = table.column("delta");
  if (c_period == io::CsvTable::npos || c_omega == io::CsvTable::npos) {
    throw io::csv_error(1, "header must contain 'period' and 'omega'");
  }
  const double nd = static_cast<double>(a.n);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> rejected;
  std::set<std::string> seen;
  for (const auto& row : table.rows) {
    const auto& period = row.fields[c_period];
    const std::string where = "line " + std::to_string(row.line) + " (" + period + "): ";
    if (!seen.insert(period).second) {
      rejected.push_back(where + "duplicate period label");
      continue;
    }
    const double omega = io::parse_real(row.fields[c_omega], row.line);
    double delta = 0.0;
    if (c_delta != io::CsvTable::npos && !row.fields[c_delta].empty()) {
      delta = io::parse_real(row.fields[c_delta], row.line);
    } else if (a.delta) {
      delta = *a.delta;
    } else {
      rejected.push_back(where + "no delta in the row and no --delta given");
      continue;
    }
    if (!(omega > 0.0 && omega < 1.0)) {
      rejected.push_back(where + "omega = " + row.fields[c_omega] + " outside (0, 1)");
      continue;
    }
    if (!(delta > -1.0 && delta < 1.0)) {
      rejected.push_back(where + "delta outside (-1, 1)");
      continue;
    }
    rows.push_back({period, io::format_real(omega), io::format_real(delta),
                    io::format_real(asymptotic_tax_rule(omega, delta)),
                    io::format_real(corrected_tax_rule(nd, omega, delta))});
  }
  detail::Sink sink(a.out_path, out);
  io::write_row(sink.stream(), {"period", "omega", "delta", "tau_asymptotic", "tau_corrected"});
  for (const auto& r : rows) io::write_row(sink.stream(), r);
  if (!rejected.empty()) {
    err << rejected.size() << " row(s) rejected:\n";
    for (const auto& r : rejected) err << "  " << r << "\n";
    return kData;
  }
  return kOk;
}

struct DvalueArgs {
  std::string game;
  double theta = 1.0;
  double rho = 1.0;
  std::string method = "exact";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

inline int cmd_dvalue(const DvalueArgs& a, std::ostream& out, std::ostream&) {
  const Game game = detail::load_game(a.game);
  const CoalitionModel model(game.n(), a.theta, a.rho);
  const DValuation val = a.method == "exact" ? exact_valuation(model, game)
                                             : mc_valuation(model, game, a.samples, a.seed, a.threads);
  auto doc = to_json(val);
  doc["n"] = game.n();
  doc["theta"] = a.theta;
  doc["rho"] = a.rho;
  try {
    doc["aggregate_formula"] = {{"gamma", aggregate_gamma_formula(model, game)},
                                {"lambda", aggregate_lambda_formula(model, game)},
                                {"expected_production", expected_production(model, game)}};
  } catch (const capacity_error&) {
    doc["aggregate_formula"] = nullptr;  // beyond the enumeration cap
  }
  out << detail::dump(doc);
  return kOk;
}

struct SweepArgs {
  std::uint64_t n = 10000;
  double delta = 0.1;
  double omega_min = 0.01;
  double omega_max = 0.99;
  double tau_min = 0.0;
  double tau_max = 1.0;
  std::size_t resolution = 99;
  std::size_t threads = 0;
  std::string out_path;
};

inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
  if (a.n == 0) throw usage_error("--n must be at least 1");
  if (!(a.delta > -1.0 && a.delta < 1.0)) throw usage_error("--delta must lie in (-1, 1)");
  const auto omegas = detail::linspace(a.omega_min, a.omega_max, a.resolution, "omega range");
  const auto taus = detail::linspace(a.tau_min, a.tau_max, a.resolution, "tau range");
  if (!(omegas.front() > 0.0 && omegas.back() < 1.0)) throw usage_error("omega range must lie inside (0, 1)");
  const auto rows = feasible_set_sweep(a.n, a.delta, omegas, taus, resolve_threads(a.threads));
  detail::Sink sink(a.out_path, out);
  write_probe_csv(sink.stream(), rows);
  return kOk;
}

struct VerifyArgs {
  int theorem = 0;
  double omega = 0.9;
  double delta = 0.1;
  double tau = 0.5;
  std::string ns = "1000,10000,100000,1000000";
  std::optional<double> offset;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::uint64_t> ns;
  for (const auto& part : detail::split(a.ns, ',')) ns.push_back(detail::to_count(part, "--n"));
  if (a.theorem == 5 && !(a.omega > 0.5 && a.omega < 1.0)) {
    throw usage_error("theorem 5 requires omega in (0.5, 1)");
  }
  if (a.offset && a.theorem != 3) throw usage_error("--offset applies to --theorem 3 only");
  VerificationReport rep;
  try {
    switch (a.theorem) {
      case 2: rep = verify_degenerate_limit(a.omega, a.delta, a.tau, ns); break;
      case 3:
        rep = a.offset ? verify_offset_rule_variance(a.omega, a.delta, *a.offset, ns)
                       : verify_asymptotic_variance(a.omega, a.delta, a.tau, ns);
        break;
      case 4: rep = verify_semivariance_sandwich(a.omega, a.delta, a.tau, ns); break;
      case 5: rep = verify_posterior_mean_expansion(a.omega, a.delta, a.tau, ns); break;
      case 6: rep = verify_mad_ratio(a.omega, a.delta, a.tau, ns); break;
      default: throw usage_error("--theorem must be one of 2, 3, 4, 5, 6");
    }
  } catch (const infeasible_error&) {
    throw;
  } catch (const std::domain_error& e) {
    throw usage_error(e.what());
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  write_report_csv(out, rep);
  for (const auto& g : rep.gates) {
    err << (g.passed ? "PASS " : "FAIL ") << g.name << ": " << g.detail << "\n";
  }
  if (const auto* bad = rep.first_failure()) {
    err << "first failing gate: " << bad->name << "\n";
    write_report_csv(err, VerificationReport{rep.theorem, rep.statistic, {rep.rows.back()}, {}});
    return kVerifyFailed;
  }
  return kOk;
}

struct AppsArgs {
  std::string game;
  double theta = 1.0;
  double rho = 1.0;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  double surcharge = 0.0;
  std::string curve;
  std::string scenario;
  std::uint64_t n = 0;
  std::optional<double> omega;
};

inline int cmd_voting(const AppsArgs& a, std::ostream& out, std::ostream&) {
  const Game game = detail::load_game(a.game);
  const CoalitionModel model(game.n(), a.theta, a.rho);
  const auto vp = voting_power(model, game, {a.samples, a.seed, a.threads});
  nlohmann::json doc;
  doc["method"] = vp.method == ValuationMethod::Exact ? "exact" : "monte_carlo";
  doc["power"] = vp.power;
  doc["gamma"] = vp.valuation.gamma;
  doc["lambda"] = vp.valuation.lambda;
  if (!vp.std_error.empty()) {
    doc["std_error"] = vp.std_error;
    doc["samples"] = a.samples;
    doc["seed"] = a.seed;
  }
  out << detail::dump(doc);
  return kOk;
}

inline int cmd_insurance(const AppsArgs& a, std::ostream& out, std::ostream&) {
  const Game game = detail::load_game(a.game);
  const CoalitionModel model(game.n(), a.theta, a.rho);
  nlohmann::json doc;
  doc["n"] = game.n();
  doc["surcharge"] = a.surcharge;
  doc["expected_cost"] = expected_production(model, game);
  doc["premium"] = insurance_premium(model, game, a.surcharge);
  out << detail::dump(doc);
  return kOk;
}

inline int cmd_toll(const AppsArgs& a, std::ostream& out, std::ostream&) {
  TollScenario sc;
  if (!a.scenario.empty()) {
    try {
      sc = load_toll_scenario(a.scenario);
    } catch (const nlohmann::json::exception& e) {
      throw data_error(a.scenario + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw data_error(e.what());
    }
  } else {
    if (a.curve.empty() || a.n == 0 || !a.omega) {
      throw usage_error("apps toll needs --scenario FILE or all of --g, --n, --omega");
    }
    sc.n = a.n;
    sc.omega = *a.omega;
    sc.g = detail::parse_curve(a.curve);
  }
  const auto r = highway_toll(sc);
  nlohmann::json doc;
  doc["n"] = sc.n;
  doc["omega"] = sc.omega;
  doc["toll"] = r.toll;
  doc["production"] = r.production;
  doc["per_capita"] = r.per_capita;
  doc["identity_residual"] = r.identity_residual;
  doc["interpolation"] = r.interpolation;
  doc["interpolated"] = r.interpolated;
  out << detail::dump(doc);
  return kOk;
}

/// Parses and dispatches; returns the exit code. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dichotomous valuation and balanced-budget tax rules", "dichotomy"};
  app.require_subcommand(1);

  TaxRateArgs tax;
  auto* tax_cmd = app.add_subcommand("tax-rate", "Asymptotic and corrected tax rules");
  tax_cmd->add_option("--omega", tax.omega, "employment rate in (0,1)")->required();
  tax_cmd->add_option("--delta", tax.delta, "reserve ratio in (-1,1)")->required();
  tax_cmd->add_option("--n", tax.n, "labor-force size; adds the finite-n rule and its (theta, rho)");

  SeriesArgs series;
  double series_delta = 0.0;
  auto* series_cmd = app.add_subcommand("series", "Apply the tax rules to a period,omega[,delta] CSV");
  series_cmd->add_option("csv", series.path, "input CSV")->required();
  auto* series_delta_opt = series_cmd->add_option("--delta", series_delta, "default reserve ratio");
  series_cmd->add_option("--n", series.n, "labor-force size")->required();
  series_cmd->add_option("--out", series.out_path, "output file (default stdout)");

  DvalueArgs dv;
  auto* dv_cmd = app.add_subcommand("dvalue", "Dichotomous valuation of a game");
  dv_cmd->add_option("--game,--family", dv.game, "family spec (e.g. majority:5) or dense-game JSON file")
      ->required();
  dv_cmd->add_option("--theta", dv.theta, "prior shape theta")->required();
  dv_cmd->add_option("--rho", dv.rho, "prior shape rho")->required();
  dv_cmd->add_option("--method", dv.method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  dv_cmd->add_option("--samples", dv.samples, "Monte Carlo draws")->check(CLI::PositiveNumber);
  dv_cmd->add_option("--seed", dv.seed, "Monte Carlo seed");
  dv_cmd->add_option("--threads", dv.threads, "worker threads (default: DICHOTOMY_THREADS or all cores)");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Closed-form (theta, rho) over an (omega, tau) grid");
  sw_cmd->add_option("--n", sw.n, "labor-force size");
  sw_cmd->add_option("--delta", sw.delta, "reserve ratio");
  sw_cmd->add_option("--omega-min", sw.omega_min);
  sw_cmd->add_option("--omega-max", sw.omega_max);
  sw_cmd->add_option("--tau-min", sw.tau_min);
  sw_cmd->add_option("--tau-max", sw.tau_max);
  sw_cmd->add_option("--resolution", sw.resolution, "grid points per axis");
  sw_cmd->add_option("--threads", sw.threads);
  sw_cmd->add_option("--out", sw.out_path, "output file (default stdout)");

  VerifyArgs ver;
  double offset = 0.0;
  auto* ver_cmd = app.add_subcommand("verify", "Large-n checks of the posterior under a tax rate");
  ver_cmd->add_option("--theorem", ver.theorem, "2, 3, 4, 5 or 6")->required();
  ver_cmd->add_option("--omega", ver.omega);
  ver_cmd->add_option("--delta", ver.delta);
  ver_cmd->add_option("--tau", ver.tau);
  ver_cmd->add_option("--n", ver.ns, "comma-separated increasing n values");
  auto* offset_opt = ver_cmd->add_option("--offset", offset, "theorem 3: use tau = rule + k*c/n with this k");

  AppsArgs ap;
  double toll_omega = 0.0;
  auto* apps_cmd = app.add_subcommand("apps", "Voting power, insurance premium and highway toll");
  apps_cmd->require_subcommand(1);
  auto* voting_cmd = apps_cmd->add_subcommand("voting", "Power gamma_i + lambda_i in a 0/1 game");
  voting_cmd->add_option("--game,--family", ap.game)->required();
  voting_cmd->add_option("--theta", ap.theta);
  voting_cmd->add_option("--rho", ap.rho);
  voting_cmd->add_option("--samples", ap.samples)->check(CLI::PositiveNumber);
  voting_cmd->add_option("--seed", ap.seed);
  voting_cmd->add_option("--threads", ap.threads);
  auto* ins_cmd = apps_cmd->add_subcommand("insurance", "Upfront premium (1 + surcharge) E[v(S)]/n");
  ins_cmd->add_option("--game,--family", ap.game)->required();
  ins_cmd->add_option("--theta", ap.theta);
  ins_cmd->add_option("--rho", ap.rho);
  ins_cmd->add_option("--surcharge", ap.surcharge);
  auto* toll_cmd = apps_cmd->add_subcommand("toll", "Toll g(n(1-omega)) for solo drivers");
  toll_cmd->add_option("--g", ap.curve, "power:P[:SCALE], linear:A or table:XS;YS");
  toll_cmd->add_option("--n", ap.n);
  auto* toll_omega_opt = toll_cmd->add_option("--omega", toll_omega);
  toll_cmd->add_option("--scenario", ap.scenario, "toll scenario JSON file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  if (*series_delta_opt) series.delta = series_delta;
  if (*offset_opt) ver.offset = offset;
  if (*toll_omega_opt) ap.omega = toll_omega;

  try {
    if (*tax_cmd) return cmd_tax_rate(tax, out, err);
    if (*series_cmd) return cmd_series(series, out, err);
    if (*dv_cmd) return cmd_dvalue(dv, out, err);
    if (*sw_cmd) return cmd_sweep(sw, out, err);
    if (*ver_cmd) return cmd_verify(ver, out, err);
    if (*voting_cmd) return cmd_voting(ap, out, err);
    if (*ins_cmd) return cmd_insurance(ap, out, err);
    if (*toll_cmd) return cmd_toll(ap, out, err);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const infeasible_error& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const singular_error& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const capacity_error& e) {
    err << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const io::csv_error& e) {
    err << "data: " << e.what() << "\n";
    return kData;
  } catch (const data_error& e) {
    err << "data: " << e.what() << "\n";
    return kData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace dichotomy::cli

#endif  // DICHOTOMY_TOOLS_CLI_HPP
