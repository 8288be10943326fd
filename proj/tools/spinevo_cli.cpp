// Command-line front end: evolution traces, speed-limit reports, figure data,
// crossing sweeps, the ground-state fit and the brute-force self-check.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure,
// 4 oracle mismatch.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinevo/analysis.hpp"
#include "spinevo/bounds.hpp"
#include "spinevo/evolution.hpp"
#include "spinevo/io.hpp"
#include "spinevo/models.hpp"
#include "spinevo/oracle.hpp"

namespace {

using namespace spinevo;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOracle = 4;

struct CommonOpts {
  std::string model = "B";
  int n = 64;
  double coupling = 1.0;
  double epsilon = 0.1;
  double threshold = 0.5;
  std::optional<double> t_max;
  std::optional<double> t_max_gnt;
  int points = 2000;
  std::string out;
  std::string format;  // table | report
  bool svg = false;
};

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size() || v < 1) throw config_error("bad tier size '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw config_error("empty tier-size list");
  return out;
}

ModelSpec make_spec(const CommonOpts& o) {
  ModelSpec spec{model_from_string(o.model), o.n, o.coupling};
  spec.validate();
  return spec;
}

double resolve_t_max(const CommonOpts& o, const ModelSpec& spec, double default_gnt) {
  if (o.t_max && o.t_max_gnt) throw config_error("give either --t-max or --t-max-gnt, not both");
  if (o.t_max) {
    if (!(*o.t_max > 0)) throw config_error("--t-max must be positive");
    return *o.t_max;
  }
  double gnt = o.t_max_gnt.value_or(default_gnt);
  if (!(gnt > 0)) throw config_error("--t-max-gnt must be positive");
  return gnt / (spec.coupling * spec.n);
}

// Writes to --out when given, stdout otherwise.
void emit(const CommonOpts& o, const std::function<void(std::ostream&)>& writer) {
  if (o.out.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw config_error("cannot open output file '" + o.out + "'");
  writer(f);
}

void maybe_svg(const CommonOpts& o, const Table& table, const std::string& title) {
  if (!o.svg) return;
  std::string path = (o.out.empty() ? std::string("figure") : o.out) + ".svg";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open output file '" + path + "'");
  write_table_svg(f, table, title);
}

int cmd_evolve(const CommonOpts& o) {
  if (!o.format.empty() && o.format != "table")
    throw config_error("evolve emits a trace table; --format report is not available");
  ModelSpec spec = make_spec(o);
  double t_max = resolve_t_max(o, spec, 6.0);
  EvolutionTrace tr = trace(spec, t_max, o.points);
  emit(o, [&](std::ostream& os) { write_trace_csv(os, tr); });
  return kExitOk;
}

void emit_report(const CommonOpts& o, const Report& rep) {
  if (o.format == "table") {
    Table t;
    t.rows.emplace_back();
    for (const auto& [k, v] : rep.items) {
      t.header.push_back(k);
      t.rows[0].push_back(v);
    }
    emit(o, [&](std::ostream& os) { t.write_csv(os); });
  } else {
    emit(o, [&](std::ostream& os) { rep.write(os); });
  }
}

int cmd_bounds(const CommonOpts& o) {
  ModelSpec spec = make_spec(o);
  SpeedLimitInputs stats = energy_stats(spec);
  SpeedLimitReport r = speed_limit(stats, o.epsilon);
  Report rep;
  rep.add("model", model_name(spec.variant));
  rep.add("n", spec.n);
  rep.add("G", spec.coupling);
  rep.add("E", r.mean_energy);
  rep.add("deltaE", r.spread);
  rep.add("E0", r.ground_energy);
  rep.add("tau_ml", r.tau_ml);
  rep.add("tau_mt", r.tau_mt);
  rep.add("tau_limit", r.tau_limit);
  rep.add("dominant", bound_kind_name(r.dominant));
  rep.add("epsilon", r.epsilon);
  emit_report(o, rep);
  return kExitOk;
}

Table figure_table(int which, const CommonOpts& o) {
  if (o.points < 2) throw config_error("--points must be at least 2");
  Table t;
  const double G = o.coupling;
  auto gnt_grid = [&](double gnt_max) {
    if (!(gnt_max > 0)) throw config_error("--t-max-gnt must be positive");
    std::vector<double> g(static_cast<size_t>(o.points));
    for (int i = 0; i < o.points; ++i) g[static_cast<size_t>(i)] = gnt_max * i / (o.points - 1);
    return g;
  };

  if (which == 1 || which == 3) {
    // survival of one model against the saturating bound trajectory
    Model m = which == 1 ? Model::A : Model::B;
    int n = o.n;
    ModelSpec spec{m, n, G};
    std::vector<double> grid = gnt_grid(o.t_max_gnt.value_or(3.0));
    SpectralDecomposition d = diagonalize(build_hamiltonian(spec));
    StateVector psi0 = initial_state(n);
    SpeedLimitInputs stats = energy_stats(spec);
    BoundKind kind = which == 1 ? BoundKind::MeanEnergy : BoundKind::Spread;
    t.header = {"gnt", "P", "epsilon_saturation"};
    for (double x : grid) {
      double time = x / (G * n);
      StateVector psi = propagate(d, psi0, time);
      t.rows.push_back({format_double(x), format_double(survival_probability(psi, psi0)),
                        format_double(saturation_epsilon(stats, kind, time))});
    }
    return t;
  }

  // upper-tier fraction families over doubling n
  std::vector<int> ns = which == 2 ? std::vector<int>{8, 16, 32, 64, 128, 256}
                                   : std::vector<int>{8, 16, 32, 64, 128, 256, 512};
  Model m = which == 2 ? Model::A : Model::B;
  double gnt_max = o.t_max_gnt.value_or(which == 2 ? 15.0 : 6.0);
  std::vector<double> grid = gnt_grid(gnt_max);
  t.header = {"gnt"};
  std::vector<std::vector<double>> columns;
  for (int n : ns) {
    t.header.push_back("R_n" + std::to_string(n));
    ModelSpec spec{m, n, G};
    SpectralDecomposition d = diagonalize(build_hamiltonian(spec));
    StateVector psi0 = initial_state(n);
    std::vector<double> col;
    col.reserve(grid.size());
    for (double x : grid) col.push_back(upper_tier_fraction(propagate(d, psi0, x / (G * n)), n));
    columns.push_back(std::move(col));
  }
  for (size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{format_double(grid[i])};
    for (const auto& col : columns) row.push_back(format_double(col[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_figure(int which, const CommonOpts& o) {
  if (which < 1 || which > 4) throw config_error("figure index must be 1..4");
  Table t = figure_table(which, o);
  emit(o, [&](std::ostream& os) { t.write_csv(os); });
  maybe_svg(o, t, "figure " + std::to_string(which));
  return kExitOk;
}

int cmd_sweep(const CommonOpts& o, const std::string& n_list, const std::string& observable,
              double horizon_gnt) {
  std::vector<int> ns = parse_n_list(n_list);
  Observable obs = observable_from_string(observable);
  if (!(o.threshold > 0 && o.threshold < 1))
    throw config_error("--threshold must lie in (0, 1)");

  Table t;
  t.header = {"n", "observable", "threshold", "status", "t_star", "gnt_star", "dgnt", "min_value"};
  std::vector<CrossingResult> found;
  double prev_gnt = std::nan("");
  for (int n : ns) {
    ModelSpec spec{model_from_string(o.model), n, o.coupling};
    std::vector<std::string> row{std::to_string(n), observable_name(obs),
                                 format_double(o.threshold)};
    try {
      CrossingResult c = find_crossing(spec, obs, o.threshold, horizon_gnt);
      found.push_back(c);
      row.push_back("ok");
      row.push_back(format_double(c.t_star));
      row.push_back(format_double(c.gnt_star));
      row.push_back(std::isnan(prev_gnt) ? "" : format_double(c.gnt_star - prev_gnt));
      row.push_back("");
      prev_gnt = c.gnt_star;
    } catch (const no_crossing_error& e) {
      row.push_back("no-crossing");
      row.push_back("");
      row.push_back("");
      row.push_back("");
      row.push_back(format_double(e.observed_minimum()));
    }
    t.rows.push_back(std::move(row));
  }
  emit(o, [&](std::ostream& os) { t.write_csv(os); });
  return kExitOk;
}

int cmd_fit_e0(const CommonOpts& o, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min) throw config_error("need 1 <= n-min <= n-max");
  std::vector<int> ns;
  for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
  QuadraticFit fit = fit_ground_state(ns, o.coupling);
  Report rep;
  rep.add("n_min", n_min);
  rep.add("n_max", n_max);
  rep.add("G", o.coupling);
  rep.add("a", fit.a);
  rep.add("b", fit.b);
  rep.add("max_rel_residual", fit.max_rel_residual);
  emit_report(o, rep);
  return kExitOk;
}

int cmd_oracle_check(const CommonOpts& o) {
  std::ostringstream out;
  bool ok = true;
  auto check = [&](const std::string& name, double value, double tol) {
    bool pass = value <= tol;
    ok = ok && pass;
    out << (pass ? "ok    " : "FAIL  ") << name << "  (" << format_double(value)
        << " vs " << format_double(tol) << ")\n";
  };

  for (Model m : {Model::A, Model::B}) {
    for (int n = 1; n <= 6; ++n) {
      ModelSpec spec{m, n, o.coupling};
      check(std::string("closure ") + model_name(m) + " n=" + std::to_string(n),
            subspace_closure_defect(spec), 1e-12);
    }
    for (int n = 2; n <= 5; ++n) {
      ModelSpec spec{m, n, o.coupling};
      double t_max = 4.0 / (o.coupling * n);
      EvolutionTrace full = brute_force_trace(spec, t_max, 20);
      EvolutionTrace restr = trace(spec, t_max, 20);
      double worst = 0.0;
      for (size_t i = 0; i < full.rows.size(); ++i) {
        worst = std::max(worst, std::fabs(full.rows[i].survival - restr.rows[i].survival));
        worst = std::max(worst,
                         std::fabs(full.rows[i].upper_fraction - restr.rows[i].upper_fraction));
        worst = std::max(worst, std::fabs(full.rows[i].entropy - restr.rows[i].entropy));
      }
      check(std::string("trace equivalence ") + model_name(m) + " n=" + std::to_string(n), worst,
            1e-8);
    }
    for (int n = 1; n <= 5; ++n) {
      ModelSpec spec{m, n, o.coupling};
      SpeedLimitInputs full = full_register_energy_stats(spec);
      // both tier models couple the initial state to a single flip with
      // element n*G, so the initial-state spread is exactly n*G
      check(std::string("spread identity ") + model_name(m) + " n=" + std::to_string(n),
            std::fabs(full.spread - n * o.coupling) / (n * o.coupling), 1e-12);
    }
  }

  // float coupling coefficients against the exact rational backend
  double worst_cg = 0.0;
  for (int n : {4, 10, 20, 40}) {
    for (int k = 0; k <= n; k += std::max(1, n / 4)) {
      for (int j = 0; j <= n; ++j) {
        CgArgs a{n, -n + 2 * k, n, n - 2 * k, 2 * j, 0};
        ExactCgSq ex = cg_exact_rational(a);
        double fl = clebsch_gordan(a);
        double exv = ex.value.get_d();
        if (exv < 1e-280) continue;
        worst_cg = std::max(worst_cg, std::fabs(fl * fl - exv) / exv);
      }
    }
  }
  check("coupling coefficients float vs exact (relative)", worst_cg, 1e-11);

  out << (ok ? "oracle-check: all checks passed\n" : "oracle-check: MISMATCH\n");
  emit(o, [&](std::ostream& os) { os << out.str(); });
  if (!ok) throw oracle_mismatch("brute-force checks disagreed with the restricted machinery");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinevo: evolution speed in two-tier coupled-spin models"};
  app.require_subcommand(1);

  CommonOpts o;
  auto add_common = [&](CLI::App* sub, bool needs_model = true, bool needs_n = true) {
    if (needs_model) sub->add_option("--model", o.model, "model variant: A, B or C");
    if (needs_n) sub->add_option("--n,--N", o.n, "tier size (A/B) or spin count (C)");
    sub->add_option("--coupling,-G", o.coupling, "coupling strength G");
    sub->add_option("--points", o.points, "number of samples");
    sub->add_option("--out", o.out, "output file (stdout when omitted)");
    sub->add_option("--format", o.format, "table or report")
        ->check(CLI::IsMember({"table", "report", ""}));
  };

  auto* evolve = app.add_subcommand("evolve", "time trace of P, R and S_e");
  add_common(evolve);
  evolve->add_option("--t-max", o.t_max, "absolute time horizon");
  evolve->add_option("--t-max-gnt", o.t_max_gnt, "horizon in G*n*t units (default 6)");

  auto* bounds = app.add_subcommand("bounds", "speed-limit report for a model");
  add_common(bounds);
  bounds->add_option("--epsilon", o.epsilon, "squared-overlap threshold");

  int figure_which = 1;
  auto* figure = app.add_subcommand("figure", "data table for one of the four figures");
  figure->add_option("which", figure_which, "figure index 1..4")->required();
  add_common(figure);
  figure->add_option("--t-max-gnt", o.t_max_gnt, "horizon in G*n*t units");
  figure->add_flag("--svg", o.svg, "also render a simple SVG plot");

  std::string sweep_ns = "8,16,32,64,128,256,512";
  std::string sweep_obs = "R";
  double sweep_horizon = 50.0;
  auto* sweep = app.add_subcommand("sweep", "threshold crossings over a list of tier sizes");
  add_common(sweep, /*needs_model=*/true, /*needs_n=*/false);
  sweep->add_option("--n,--n-list,--N", sweep_ns, "comma-separated tier sizes");
  sweep->add_option("--observable", sweep_obs, "P or R");
  sweep->add_option("--threshold", o.threshold, "crossing threshold in (0, 1)");
  sweep->add_option("--horizon-gnt", sweep_horizon, "search horizon in G*n*t units");

  int nmin = 4, nmax = 100;
  auto* fit = app.add_subcommand("fit-e0", "quadratic fit of the model-B ground energy");
  add_common(fit, /*needs_model=*/false);
  fit->add_option("--n-min", nmin, "smallest tier size");
  fit->add_option("--n-max", nmax, "largest tier size");

  auto* oc = app.add_subcommand("oracle-check", "brute-force self-check of the restricted machinery");
  add_common(oc, /*needs_model=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (evolve->parsed()) return cmd_evolve(o);
    if (bounds->parsed()) return cmd_bounds(o);
    if (figure->parsed()) return cmd_figure(figure_which, o);
    if (sweep->parsed()) return cmd_sweep(o, sweep_ns, sweep_obs, sweep_horizon);
    if (fit->parsed()) return cmd_fit_e0(o, nmin, nmax);
    if (oc->parsed()) return cmd_oracle_check(o);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const oracle_mismatch& e) {
    std::cerr << "oracle mismatch: " << e.what() << '\n';
    return kExitOracle;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
