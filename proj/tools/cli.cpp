// Copyright 2026 The tightbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

#include "tightbounds/bounds.hpp"
#include "tightbounds/newsvendor.hpp"
#include "tightbounds/oracle.hpp"
#include "tightbounds/parallel.hpp"
#include "tightbounds/pricing.hpp"
#include "tightbounds/serialize.hpp"

namespace tightbounds::cli {

namespace {

// ---------------------------------------------------------------- output

using Cell = std::variant<double, std::string>;

struct Tabular {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Result {
  Json json;
  Tabular table;
};

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

Json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return number_to_json(*d);
  return std::get<std::string>(c);
}

Json rows_json(const Tabular& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json obj;
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(obj);
  }
  return rows;
}

std::string render_csv(const Tabular& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string render_table(const Tabular& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], cell_text(row[i]).size());
  }
  std::ostringstream os;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? "  " : "") << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size(), ' ');
    }
    os << '\n';
  };
  line(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (const auto& c : row) cells.push_back(cell_text(c));
    line(cells);
  }
  return os.str();
}

std::string render(const Result& r, const std::string& format) {
  if (format == "json") return r.json.dump(2) + "\n";
  if (format == "csv") return render_csv(r.table);
  return render_table(r.table);
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

// ---------------------------------------------------------------- flags

struct OutputFlags {
  std::string format = "table";
  std::string out;
};

void add_output_flags(CLI::App* sub, OutputFlags& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  sub->add_option("--out", o.out, "Write output to this file instead of standard output");
}

struct SpecFlags {
  std::string kind = "power";
  double p = 2.0;
  double s = 1.0;
  double mu = 1.0;
};

void add_spec_flags(CLI::App* sub, SpecFlags& f) {
  sub->add_option("--kind", f.kind, "Dispersion measure: power (E|X-mu|^p = s^p), variance, mad")
      ->check(CLI::IsMember({"power", "variance", "mad"}))
      ->capture_default_str();
  sub->add_option("--p", f.p, "Power deviation exponent, >= 1 (dimensionless); 1 selects mad")
      ->capture_default_str();
  sub->add_option("--s", f.s,
                  "Deviation scale, > 0, in outcome units (sigma for variance, d for mad)")
      ->capture_default_str();
  sub->add_option("--mu", f.mu, "Mean, in outcome units")->capture_default_str();
}

DispersionSpec build_spec(const SpecFlags& f) {
  if (f.kind == "mad" || (f.kind == "power" && f.p == 1.0)) return DispersionSpec::mad(f.mu, f.s);
  if (f.kind == "variance") return DispersionSpec::variance(f.mu, f.s);
  return DispersionSpec::power(f.mu, f.p, f.s);
}

std::vector<double> linspace_step(double a, double b, double step) {
  const int n = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(std::round((a + i * step) * 1e12) / 1e12);
  return out;
}

// ---------------------------------------------------------------- bound

void append_extremal(std::vector<Cell>& row, const Extremal& e) {
  if (const auto* tp = std::get_if<TwoPoint>(&e)) {
    row.insert(row.end(), {tp->v1, tp->w1, tp->v2, tp->w2});
  } else {
    const auto& lp = std::get<LimitingPair>(e);
    row.insert(row.end(), {lp.v1, std::string(), lp.v2, std::string()});
  }
}

Result bound_result(const std::string& quantity, const DispersionSpec& spec, double t,
                    bool generic) {
  const Route route = generic ? Route::Generic : Route::Auto;
  BoundResult r;
  if (quantity == "cond-exp") {
    r = cond_expectation_sup(spec, t, {}, route);
  } else if (quantity == "tail") {
    r = tail_inf(spec, t, {}, route);
  } else {
    r = max_operator_sup(spec, t, {}, route);
  }
  Result out;
  out.json = to_json(r);
  out.json["quantity"] = quantity;
  out.json["t"] = number_to_json(t);
  out.json["route"] = generic ? "generic" : "auto";
  out.json["spec"] = to_json(spec);
  out.table.columns = {"quantity", "t", "value", "regime", "v1", "w1", "v2", "w2"};
  std::vector<Cell> row{quantity, t, r.value, std::string(to_string(r.regime))};
  append_extremal(row, r.extremal);
  out.table.rows.push_back(row);
  return out;
}

// ---------------------------------------------------------------- newsvendor

Result newsvendor_solve(const DispersionSpec& spec, double b, double h, bool generic) {
  const NewsvendorSolution sol = solve({spec, b, h}, {}, generic ? Route::Generic : Route::Auto);
  Result out;
  out.json = to_json(sol);
  out.json["b"] = b;
  out.json["h"] = h;
  out.json["route"] = generic ? "generic" : "auto";
  out.json["spec"] = to_json(spec);
  out.table.columns = {"q_star", "cost", "cost_centered", "cost_mu_plus_sigma_sqrt_bh"};
  out.table.rows.push_back({sol.q_star, sol.cost, sol.cost_centered,
                            sol.cost_mu_plus_sigma_sqrt_bh
                                ? Cell(*sol.cost_mu_plus_sigma_sqrt_bh)
                                : Cell(std::string())});
  return out;
}

Tabular newsvendor_sweep(double mu, double b, double h, const std::vector<double>& p_grid,
                         const std::vector<double>& s_grid) {
  struct Point {
    double p, s, q, cost;
  };
  std::vector<Point> pts;
  for (double s : s_grid) {
    for (double p : p_grid) pts.push_back({p, s, 0.0, 0.0});
  }
  parallel_for(pts.size(), threads_from_env(), [&](std::size_t i) {
    const DispersionSpec spec =
        pts[i].p == 1.0 ? DispersionSpec::mad(mu, pts[i].s) : DispersionSpec::power(mu, pts[i].p, pts[i].s);
    const NewsvendorSolution sol = solve({spec, b, h});
    pts[i].q = sol.q_star;
    pts[i].cost = sol.cost;
  });
  Tabular t;
  t.columns = {"p", "s", "q_star", "cost"};
  for (const auto& pt : pts) t.rows.push_back({pt.p, pt.s, pt.q, pt.cost});
  return t;
}

Tabular pbar_table(double mu, double s, double h, const std::vector<double>& ratios,
                   const std::vector<double>& p_grid) {
  Tabular t;
  t.columns = {"b_over_h", "p_bar", "q_star_at_p_bar", "interior"};
  for (double ratio : ratios) {
    const PbarResult r = sweep_pbar(mu, s, ratio * h, h, p_grid);
    t.rows.push_back({ratio, r.p_bar, r.q_star_at_p_bar, std::string(r.interior ? "yes" : "no")});
  }
  return t;
}

// ---------------------------------------------------------------- pricing

PricingProblem pricing_problem(const std::string& kind, double p, double delta) {
  if (kind == "mad" || (kind == "power" && p == 1.0)) return PricingProblem::mad(delta);
  if (kind == "variance") return PricingProblem::variance(delta);
  return PricingProblem::power(p, delta);
}

std::vector<Cell> pricing_row(double delta, const PricingSolution& sol) {
  return {delta, sol.rho1 ? Cell(*sol.rho1) : Cell(std::string()), sol.rho2, sol.rho_star,
          sol.ratio, std::string(to_string(sol.regime))};
}

const std::vector<std::string> kPricingColumns = {"delta",    "rho1",  "rho2",
                                                  "rho_star", "ratio", "regime"};

Tabular pricing_sweep(const std::string& kind, double p, const std::vector<double>& deltas,
                      bool generic) {
  std::vector<PricingSolution> sols(deltas.size());
  parallel_for(deltas.size(), threads_from_env(), [&](std::size_t i) {
    sols[i] = solve(pricing_problem(kind, p, deltas[i]), {}, generic ? Route::Generic : Route::Auto);
  });
  Tabular t;
  t.columns = kPricingColumns;
  for (std::size_t i = 0; i < deltas.size(); ++i) t.rows.push_back(pricing_row(deltas[i], sols[i]));
  return t;
}

Tabular transition_table(const std::vector<double>& p_grid) {
  std::vector<Cell> value(p_grid.size());
  std::vector<std::string> status(p_grid.size());
  parallel_for(p_grid.size(), threads_from_env(), [&](std::size_t i) {
    try {
      value[i] = transition_delta(p_grid[i]);
      status[i] = "ok";
    } catch (const NoTransition&) {
      value[i] = std::string();
      status[i] = "NoTransition";
    }
  });
  Tabular t;
  t.columns = {"p", "t_p", "status"};
  for (std::size_t i = 0; i < p_grid.size(); ++i) t.rows.push_back({p_grid[i], value[i], status[i]});
  return t;
}

// ---------------------------------------------------------------- verify

Result verify(const DispersionSpec& spec, const std::string& objective, double t, int grid,
              std::int64_t samples, std::uint64_t seed, double tolerance) {
  oracle::Objective obj = objective == "cond-exp" ? oracle::Objective::cond_exp(t)
                          : objective == "tail"   ? oracle::Objective::tail(t)
                                                  : oracle::Objective::max_op(t);
  const double bound = oracle::reference_bound(spec, obj);
  const oracle::OracleReport sweep = oracle::sweep_two_point(spec, obj, grid);
  oracle::SampleOptions opts;
  opts.tolerance = tolerance;
  opts.threads = threads_from_env();
  opts.reference = bound;
  const oracle::OracleReport sample = oracle::sample_three_point(spec, obj, samples, seed, opts);

  double gap = std::abs(sweep.best_objective - bound);
  if (std::isinf(bound) && std::isinf(sweep.best_objective) && (bound > 0) == (sweep.best_objective > 0)) {
    gap = 0.0;
  }
  const double rel_gap = gap / std::max(1.0, std::abs(bound));
  Result out;
  out.json["spec"] = to_json(spec);
  out.json["objective"] = objective;
  out.json["t"] = number_to_json(t);
  out.json["bound"] = number_to_json(bound);
  out.json["sweep_best"] = number_to_json(sweep.best_objective);
  out.json["sweep_relative_gap"] = number_to_json(rel_gap);
  out.json["sweep_points"] = sweep.samples_evaluated;
  out.json["seed"] = seed;
  out.json["tolerance"] = tolerance;
  out.json["sample"] = to_json(sample);
  out.table.columns = {"objective", "t",          "bound",      "sweep_best",
                       "sweep_gap", "samples_ok", "violations", "sample_best"};
  out.table.rows.push_back({objective, t, bound, sweep.best_objective, rel_gap,
                            static_cast<double>(sample.samples_evaluated),
                            static_cast<double>(sample.violation_count), sample.best_objective});
  return out;
}

// ---------------------------------------------------------------- figures

std::vector<std::string> figure(const std::string& which, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const Tabular& t) {
    const auto path = dir / name;
    write_file(path, render_csv(t));
    written.push_back(path.string());
  };

  if (which == "fig1") {
    const std::vector<double> s_values = {0.5, 0.75, 1.0, 1.5};
    const std::vector<double> p_values = linspace_step(1.0, 5.0, 0.1);
    for (const std::string quantity : {"cond-exp", "tail", "max-op"}) {
      Tabular t;
      t.columns = {"p", "s", "value"};
      std::vector<double> vals(s_values.size() * p_values.size());
      parallel_for(vals.size(), threads_from_env(), [&](std::size_t i) {
        const double s = s_values[i / p_values.size()];
        const double p = p_values[i % p_values.size()];
        const DispersionSpec spec =
            p == 1.0 ? DispersionSpec::mad(1.0, s) : DispersionSpec::power(1.0, p, s);
        vals[i] = quantity == "cond-exp" ? cond_expectation_sup(spec, 0.0).value
                  : quantity == "tail"   ? tail_inf(spec, 0.0).value
                                         : max_operator_sup(spec, 0.0).value;
      });
      for (std::size_t i = 0; i < vals.size(); ++i) {
        t.rows.push_back({p_values[i % p_values.size()], s_values[i / p_values.size()], vals[i]});
      }
      std::string name = quantity;
      std::replace(name.begin(), name.end(), '-', '_');
      emit("fig1_" + name + ".csv", t);
    }
  } else if (which == "fig2") {
    const Tabular t = newsvendor_sweep(1.0, 10.0, 1.0, linspace_step(1.0, 5.0, 0.1), {0.25, 0.5, 1.0});
    Tabular q, c;
    q.columns = {"p", "s", "q_star"};
    c.columns = {"p", "s", "cost"};
    for (const auto& row : t.rows) {
      q.rows.push_back({row[0], row[1], row[2]});
      c.rows.push_back({row[0], row[1], row[3]});
    }
    emit("fig2_q_star.csv", q);
    emit("fig2_cost.csv", c);
  } else if (which == "fig3") {
    const std::vector<double> p_values = {1.25, 1.5, 2.0, 2.5, 3.0, 4.0};
    const std::vector<double> q_values = linspace_step(0.5, 3.0, 0.01);
    const double s = 0.5;
    std::vector<double> cost(p_values.size() * q_values.size());
    std::vector<NewsvendorSolution> minima;
    for (double p : p_values) minima.push_back(solve({DispersionSpec::power(1.0, p, s), 10.0, 1.0}));
    parallel_for(cost.size(), threads_from_env(), [&](std::size_t i) {
      const NewsvendorProblem prob{DispersionSpec::power(1.0, p_values[i / q_values.size()], s),
                                   10.0, 1.0};
      cost[i] = worst_case_cost(prob, q_values[i % q_values.size()]);
    });
    Tabular curves, mins;
    curves.columns = {"p", "s", "q", "cost"};
    mins.columns = {"p", "s", "q_star", "cost"};
    for (std::size_t i = 0; i < cost.size(); ++i) {
      curves.rows.push_back(
          {p_values[i / q_values.size()], s, q_values[i % q_values.size()], cost[i]});
    }
    for (std::size_t k = 0; k < p_values.size(); ++k) {
      mins.rows.push_back({p_values[k], s, minima[k].q_star, minima[k].cost});
    }
    emit("fig3_cost_curves.csv", curves);
    emit("fig3_minima.csv", mins);
  } else if (which == "fig4") {
    emit("fig4_variance.csv", pricing_sweep("variance", 2.0, linspace_step(0.05, 2.0, 0.05), false));
    emit("fig4_mad.csv", pricing_sweep("mad", 1.0, linspace_step(0.02, 1.98, 0.02), false));
  } else {
    emit("table1.csv", pbar_table(1.0, 0.5, 1.0, {10, 15, 20, 25, 30, 40, 50, 60, 70, 80},
                                  linspace_step(1.1, 5.0, 0.1)));
  }
  return written;
}

Json error_json(const Error& e, const SolveReport& report) {
  Json j;
  j["error"] = to_string(e.kind());
  j["message"] = e.what();
  j["report"] = to_json(report);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distribution-free bounds over mean-dispersion ambiguity sets", "tightbounds"};
  // --h is the holding penalty, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.footer("Environment: TIGHTBOUNDS_THREADS caps worker threads for sweeps (0 or unset = all cores).");

  // bound
  auto* bound = app.add_subcommand("bound", "Tight bounds for one threshold");
  bound->require_subcommand(1, 1);
  SpecFlags bspec;
  OutputFlags bout;
  double bt = 0.0;
  bool bgeneric = false;
  std::vector<std::pair<std::string, CLI::App*>> bound_leaves;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"cond-exp", "sup E[X | X >= t]"},
           {"tail", "inf P(X >= t)"},
           {"max-op", "sup E[max(X - t, 0)]"}}) {
    auto* leaf = bound->add_subcommand(name, help);
    add_spec_flags(leaf, bspec);
    leaf->add_option("--t", bt, "Threshold t, in outcome units")->capture_default_str();
    leaf->add_flag("--generic", bgeneric, "Force the general root-finding path");
    add_output_flags(leaf, bout);
    bound_leaves.emplace_back(name, leaf);
  }

  // newsvendor
  auto* news = app.add_subcommand("newsvendor", "Robust newsvendor");
  news->require_subcommand(1, 1);
  SpecFlags nspec;
  OutputFlags nout;
  double nb = 10.0;
  double nh = 1.0;
  bool ngeneric = false;
  auto* nsolve = news->add_subcommand("solve", "Optimal order quantity and worst-case cost");
  add_spec_flags(nsolve, nspec);
  nsolve->add_option("--b", nb, "Underage penalty per unit of unmet demand, > 0")->capture_default_str();
  nsolve->add_option("--h", nh, "Holding penalty per unsold unit, > 0")->capture_default_str();
  nsolve->add_flag("--generic", ngeneric, "Force the numeric search even where a closed form exists");
  add_output_flags(nsolve, nout);

  auto* nsweep = news->add_subcommand("sweep", "q* and cost over grids of p and s (power deviation)");
  double sw_mu = 1.0;
  std::vector<double> sw_p = linspace_step(1.0, 5.0, 0.1);
  std::vector<double> sw_s = {0.25, 0.5, 1.0};
  nsweep->add_option("--mu", sw_mu, "Mean demand, in units")->capture_default_str();
  nsweep->add_option("--b", nb, "Underage penalty per unit of unmet demand, > 0")->capture_default_str();
  nsweep->add_option("--h", nh, "Holding penalty per unsold unit, > 0")->capture_default_str();
  nsweep->add_option("--p-grid", sw_p, "Comma-separated exponents p >= 1 (default 1,1.1,...,5)")
      ->delimiter(',');
  nsweep->add_option("--s-grid", sw_s, "Comma-separated deviation scales s, in units")
      ->delimiter(',')
      ->capture_default_str();
  add_output_flags(nsweep, nout);

  auto* npbar = news->add_subcommand("pbar-table", "Argmax p of q*(p) for several b/h ratios");
  double pb_mu = 1.0;
  double pb_s = 0.5;
  std::vector<double> pb_ratios = {10, 15, 20, 25, 30, 40, 50, 60, 70, 80};
  std::vector<double> pb_p = linspace_step(1.1, 5.0, 0.1);
  npbar->add_option("--mu", pb_mu, "Mean demand, in units")->capture_default_str();
  npbar->add_option("--s", pb_s, "Deviation scale s, in units")->capture_default_str();
  npbar->add_option("--h", nh, "Holding penalty per unsold unit, > 0 (b = ratio * h)")
      ->capture_default_str();
  npbar->add_option("--ratios", pb_ratios, "Comma-separated b/h ratios")
      ->delimiter(',')
      ->capture_default_str();
  npbar->add_option("--p-grid", pb_p, "Comma-separated exponents p > 1 (default 1.1,1.2,...,5)")
      ->delimiter(',');
  add_output_flags(npbar, nout);

  // pricing
  auto* pricing = app.add_subcommand("pricing", "Robust monopoly pricing");
  pricing->require_subcommand(1, 1);
  std::string pkind = "power";
  double pp = 2.0;
  double pdelta = 0.5;
  bool pgeneric = false;
  OutputFlags pout;
  const auto add_pricing_kind = [&](CLI::App* leaf) {
    leaf->add_option("--kind", pkind, "Dispersion measure: power, variance, mad")
        ->check(CLI::IsMember({"power", "variance", "mad"}))
        ->capture_default_str();
    leaf->add_option("--p", pp, "Power deviation exponent, >= 1; 1 selects mad")->capture_default_str();
  };
  auto* psolve = pricing->add_subcommand("solve", "Robust price rho* = r/mu and its ratio");
  add_pricing_kind(psolve);
  psolve->add_option("--delta", pdelta, "Dispersion relative to the mean (s/mu), dimensionless")
      ->capture_default_str();
  psolve->add_flag("--generic", pgeneric, "Use the numeric candidate search for every kind");
  add_output_flags(psolve, pout);

  auto* psweep = pricing->add_subcommand("sweep", "rho1, rho2, rho* and ratio over a delta grid");
  add_pricing_kind(psweep);
  std::vector<double> ps_deltas;
  psweep->add_option("--delta-grid", ps_deltas,
                     "Comma-separated deltas (default 0.02,...,1.98 for mad, 0.05,...,2 otherwise)")
      ->delimiter(',');
  psweep->add_flag("--generic", pgeneric, "Use the numeric candidate search for every kind");
  add_output_flags(psweep, pout);

  auto* ptrans = pricing->add_subcommand("transition", "delta where rho2 overtakes rho1, per p");
  std::vector<double> pt_p = linspace_step(1.0, 2.0, 0.1);
  ptrans->add_option("--p-grid", pt_p, "Comma-separated exponents in [1, 2] (default 1,1.1,...,2)")
      ->delimiter(',');
  add_output_flags(ptrans, pout);

  // verify
  auto* ver = app.add_subcommand("verify", "Brute-force check of a bound with two- and three-point laws");
  SpecFlags vspec;
  OutputFlags vout;
  std::string vobj = "cond-exp";
  double vt = 0.0;
  int vgrid = 10000;
  std::int64_t vsamples = 100000;
  std::uint64_t vseed = 0;
  double vtol = 1e-6;
  add_spec_flags(ver, vspec);
  ver->add_option("--objective", vobj, "Quantity to verify")
      ->check(CLI::IsMember({"cond-exp", "tail", "max-op"}))
      ->capture_default_str();
  ver->add_option("--t", vt, "Threshold t, in outcome units")->capture_default_str();
  ver->add_option("--grid", vgrid, "Two-point sweep grid size, >= 10")->capture_default_str();
  ver->add_option("--samples", vsamples, "Three-point samples, >= 1")->capture_default_str();
  ver->add_option("--seed", vseed, "Sampling seed")->capture_default_str();
  ver->add_option("--tolerance", vtol, "Violation tolerance, absolute")->capture_default_str();
  add_output_flags(ver, vout);

  // figures
  auto* fig = app.add_subcommand("figures", "Write CSV data for the figures and the p-bar table");
  fig->require_subcommand(1, 1);
  std::string fig_dir = ".";
  std::vector<std::pair<std::string, CLI::App*>> fig_leaves;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"fig1", "Bounds at mu = 1, t = 0 against p, several s"},
           {"fig2", "Newsvendor q* and cost against p (mu = 1, b = 10, h = 1)"},
           {"fig3", "Newsvendor cost curves C(q) for several p (s = 0.5)"},
           {"fig4", "Pricing candidates against delta, variance and mad"},
           {"table1", "p-bar for b/h in 10..80"}}) {
    auto* leaf = fig->add_subcommand(name, help);
    leaf->add_option("--out-dir", fig_dir, "Directory for the CSV files")->capture_default_str();
    fig_leaves.emplace_back(name, leaf);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const auto emit = [&](const Result& r, const OutputFlags& o) {
    const std::string text = render(r, o.format);
    if (o.out.empty()) {
      out << text;
    } else {
      write_file(o.out, text);
    }
  };
  const auto emit_table = [&](const Tabular& t, const OutputFlags& o, Json params) {
    Result r;
    r.table = t;
    r.json = std::move(params);
    r.json["rows"] = rows_json(t);
    emit(r, o);
  };

  try {
    for (const auto& [name, leaf] : bound_leaves) {
      if (leaf->parsed()) emit(bound_result(name, build_spec(bspec), bt, bgeneric), bout);
    }
    if (nsolve->parsed()) emit(newsvendor_solve(build_spec(nspec), nb, nh, ngeneric), nout);
    if (nsweep->parsed()) {
      Json params;
      params["mu"] = sw_mu;
      params["b"] = nb;
      params["h"] = nh;
      emit_table(newsvendor_sweep(sw_mu, nb, nh, sw_p, sw_s), nout, params);
    }
    if (npbar->parsed()) {
      Json params;
      params["mu"] = pb_mu;
      params["s"] = pb_s;
      params["h"] = nh;
      emit_table(pbar_table(pb_mu, pb_s, nh, pb_ratios, pb_p), nout, params);
    }
    if (psolve->parsed()) {
      const PricingSolution sol = solve(pricing_problem(pkind, pp, pdelta), {},
                                        pgeneric ? Route::Generic : Route::Auto);
      Result r;
      r.json = to_json(sol);
      r.json["kind"] = pkind;
      r.json["p"] = pp;
      r.json["delta"] = pdelta;
      r.json["route"] = pgeneric ? "generic" : "auto";
      r.table.columns = kPricingColumns;
      r.table.rows.push_back(pricing_row(pdelta, sol));
      emit(r, pout);
    }
    if (psweep->parsed()) {
      const bool mad = pkind == "mad" || (pkind == "power" && pp == 1.0);
      if (ps_deltas.empty()) {
        ps_deltas = mad ? linspace_step(0.02, 1.98, 0.02) : linspace_step(0.05, 2.0, 0.05);
      }
      Json params;
      params["kind"] = pkind;
      params["p"] = pp;
      emit_table(pricing_sweep(pkind, pp, ps_deltas, pgeneric), pout, params);
    }
    if (ptrans->parsed()) emit_table(transition_table(pt_p), pout, Json::object());
    if (ver->parsed()) {
      emit(verify(build_spec(vspec), vobj, vt, vgrid, vsamples, vseed, vtol), vout);
    }
    for (const auto& [name, leaf] : fig_leaves) {
      if (!leaf->parsed()) continue;
      for (const auto& path : figure(name, fig_dir)) out << path << '\n';
    }
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    out << error_json(e, e.report()).dump(2) << '\n';
    return 1;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError || e.kind() == ErrorKind::NotConvex ||
        e.kind() == ErrorKind::NotSuperlinear) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    err << "error: " << e.what() << '\n';
    out << error_json(e, SolveReport{}).dump(2) << '\n';
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace tightbounds::cli
