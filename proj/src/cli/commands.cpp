#include "flv/cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>

#include "flv/basin.hpp"
#include "flv/cli/output.hpp"
#include "flv/errors.hpp"
#include "flv/geometry.hpp"
#include "flv/lotka.hpp"
#include "flv/stability.hpp"

namespace flv::cli {

using nlohmann::json;

namespace {

bool wants(const Options& o, const char* fmt) { return o.formats.count(fmt) > 0; }

std::string orders_text(const std::vector<RationalOrder>& orders) {
  std::string s;
  for (std::size_t k = 0; k < orders.size(); ++k) s += (k ? " " : "") + orders[k].str();
  return s;
}

json orders_json(const std::vector<RationalOrder>& orders) {
  json out = json::array();
  for (const auto& o : orders) out.push_back(o.str());
  return out;
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void emit(const std::filesystem::path& path, const std::string& content) {
  write_file(path, content);
  std::cout << path.string() << "\n";
}

void emit_json(const std::filesystem::path& path, const json& j) { emit(path, j.dump(2) + "\n"); }

// A runnable problem for one start point: the IVP plus how to map its state
// back to (y1, y2, ...) order for output.
struct Prepared {
  FractionalIVP ivp;
  std::vector<std::size_t> columns;  // output column k reads state component columns[k]
  std::vector<std::string> names;
  std::vector<std::array<double, 2>> equilibria;  // plane markers
};

FractionalIVP generic_ivp(const RunConfig& cfg, std::vector<double> y0) {
  FractionalIVP ivp;
  for (const auto& o : cfg.orders) ivp.orders.push_back(o.value());
  const GenericModel model = cfg.generic;
  ivp.rhs = [model](double, std::span<const double> y, std::span<double> dy) { model.evaluate(y, dy); };
  ivp.y0 = std::move(y0);
  ivp.t_end = cfg.t_end;
  ivp.h = cfg.h;
  return ivp;
}

Prepared prepare(const RunConfig& cfg, const std::vector<double>& y0) {
  Prepared p;
  if (cfg.model == ModelKind::Generic) {
    p.ivp = generic_ivp(cfg, y0);
    for (std::size_t k = 0; k < y0.size(); ++k) {
      p.columns.push_back(k);
      p.names.push_back("y" + std::to_string(k + 1));
    }
    for (const auto& e : cfg.generic.equilibria) {
      if (e.size() >= 2) p.equilibria.push_back({e[0], e[1]});
    }
    return p;
  }
  const lotka::System s = cfg.lotka_system();
  for (const auto& e : lotka::equilibria(s.params)) p.equilibria.push_back(e);
  switch (lotka::classify_orders(s)) {
    case lotka::OrderCase::Fractional:
      p.ivp = lotka::make_ivp(s, {y0[0], y0[1]}, cfg.t_end, cfg.h);
      p.columns = {0, 1};
      p.names = {"y1", "y2"};
      break;
    case lotka::OrderCase::Lifted:
      // Lifted state order is (y3, y4, y1, y2).
      p.ivp = lotka::make_lifted_ivp(lotka::lift(s), {y0[0], y0[1]}, cfg.slope0, cfg.t_end, cfg.h);
      p.columns = {2, 3, 0, 1};
      p.names = {"y1", "y2", "y3", "y4"};
      break;
    case lotka::OrderCase::Mixed:
      throw UnsupportedCase("orders " + s.alpha.str() + " and " + s.beta.str() +
                            " mix (0, 1] and (1, 2); this case is not analyzed");
  }
  return p;
}

Trajectory reorder(const Trajectory& traj, const std::vector<std::size_t>& columns) {
  Trajectory out(columns.size(), traj.step());
  std::vector<double> row(columns.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto s = traj.state(k);
    for (std::size_t c = 0; c < columns.size(); ++c) row[c] = s[columns[c]];
    out.push_back(traj.time(k), row);
  }
  if (traj.escaped()) out.mark_escaped();
  return out;
}

std::vector<std::array<double, 2>> plane(const Trajectory& traj) {
  std::vector<std::array<double, 2>> pts;
  for (std::size_t k = 0; k < traj.size(); ++k) pts.push_back({traj.state(k)[0], traj.state(k)[1]});
  return pts;
}

std::array<double, 4> bounds(const std::vector<std::array<double, 2>>& pts) {
  std::array<double, 4> b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& p : pts) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
    b[0] = std::min(b[0], p[0]);
    b[1] = std::max(b[1], p[0]);
    b[2] = std::min(b[2], p[1]);
    b[3] = std::max(b[3], p[1]);
  }
  const double px = 0.05 * (b[1] - b[0]) + 1e-3, py = 0.05 * (b[3] - b[2]) + 1e-3;
  return {b[0] - px, b[1] + px, b[2] - py, b[3] + py};
}

std::vector<double> start_of(const RunConfig& cfg) {
  if (cfg.y0.empty()) throw ConfigError(cfg.source + ": y0: required for this command");
  return cfg.y0;
}

json lotka_params_json(const lotka::Params& p) { return {{"a", p.a}, {"b", p.b}, {"c", p.c}}; }

json report_json(const StabilityReport& r) {
  json roots = json::array();
  for (const auto& root : r.roots) {
    json j = complex_json(root.value);
    j["abs_arg"] = root.abs_arg;
    roots.push_back(j);
  }
  json witness = complex_json(r.witness.value);
  witness["abs_arg"] = r.witness.abs_arg;
  return {{"verdict", to_string(r.verdict)},
          {"M", r.multiple},
          {"sector_half_angle", r.sector_half_angle},
          {"min_abs_arg", r.witness.abs_arg},
          {"witness", witness},
          {"polynomial", r.polynomial.coeffs()},
          {"roots", roots}};
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, const Options& options) {
  const Prepared p = prepare(cfg, start_of(cfg));
  SolverOptions so;
  so.escape_magnitude = cfg.escape;
  const Trajectory traj = reorder(abm_solve(p.ivp, so), p.columns);

  json side = {{"command", "simulate"},
               {"name", cfg.name},
               {"orders", orders_json(cfg.orders)},
               {"t_end", cfg.t_end},
               {"h", cfg.h},
               {"escaped", traj.escaped()},
               {"rows", traj.size()},
               {"t_final", traj.time(traj.size() - 1)},
               {"final_state", std::vector<double>(traj.back().begin(), traj.back().end())}};
  if (options.detect_ties) {
    const auto report = geometry::detect_self_intersection(traj, 0, 1);
    json ties = json::array();
    for (const auto& c : report.crossings) {
      ties.push_back({{"segment_i", c.first}, {"segment_j", c.second}, {"y1", c.point[0]}, {"y2", c.point[1]}});
    }
    side["ties"] = ties;
    side["tie_count"] = report.crossings.size();
    side["degenerate_contacts"] = report.degenerate;
  }
  if (wants(options, "csv")) emit(options.out / (cfg.name + ".csv"), trajectory_csv(traj, p.names));
  emit_json(options.out / (cfg.name + ".json"), side);
  if (wants(options, "svg")) {
    auto pts = plane(traj);
    auto all = pts;
    all.insert(all.end(), p.equilibria.begin(), p.equilibria.end());
    const auto b = bounds(all);
    SvgPlot svg(b[0], b[1], b[2], b[3], cfg.name + " (" + orders_text(cfg.orders) + ")");
    svg.polyline(pts, "#1f77b4");
    svg.marker(pts.front(), "#2ca02c", "start");
    for (std::size_t k = 0; k < p.equilibria.size(); ++k) {
      svg.marker(p.equilibria[k], "#d62728", "Y" + std::to_string(k + 1) + "*");
    }
    emit(options.out / (cfg.name + ".svg"), svg.render());
  }
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, const Options& options) {
  json out = {{"command", "stability"}, {"name", cfg.name}, {"orders", orders_json(cfg.orders)}};
  const auto path = options.out / (cfg.name + "_stability.json");
  if (cfg.model == ModelKind::Generic) {
    if (cfg.generic.equilibria.empty()) throw ConfigError(cfg.source + ": equilibria: required for stability");
    out["model"] = "generic";
    const GenericModel model = cfg.generic;
    EquilibriumModel em;
    em.rhs = [model](std::span<const double> y) {
      std::vector<double> dy(model.dimension());
      model.evaluate(y, dy);
      return dy;
    };
    json eqs = json::array();
    for (const auto& e : cfg.generic.equilibria) {
      const auto r = analyze_equilibrium(em, e, cfg.orders);
      json j = report_json(r);
      j["point"] = e;
      j["numeric"] = j["verdict"];
      eqs.push_back(j);
    }
    out["equilibria"] = eqs;
    emit_json(path, out);
    return kExitOk;
  }

  const lotka::System s = cfg.lotka_system();
  out["model"] = "lotka";
  out["params"] = lotka_params_json(s.params);
  const auto order_case = lotka::classify_orders(s);
  out["case"] = lotka::to_string(order_case);
  if (order_case == lotka::OrderCase::Mixed) {
    out["status"] = "unsupported-case";
    out["reason"] = "one order lies in (0, 1] and the other in (1, 2); the sector analysis covers only "
                    "both-fractional and both-lifted cases";
    emit_json(path, out);
    return kExitUnsupported;
  }
  out["status"] = "ok";
  const auto closed = lotka::closed_form_stability(s);
  json eqs = json::array();
  std::vector<std::vector<double>> points;
  if (order_case == lotka::OrderCase::Lifted) {
    for (const auto& e : lotka::lift(s).equilibria()) points.emplace_back(e.begin(), e.end());
    out["state_order"] = {"y3", "y4", "y1", "y2"};
  } else {
    for (const auto& e : lotka::equilibria(s.params)) points.push_back({e[0], e[1]});
    out["state_order"] = {"y1", "y2"};
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const auto r = lotka::numeric_stability(s, k);
    json j = report_json(r);
    j["index"] = k;
    j["point"] = points[k];
    j["closed_form"] = to_string(closed.verdicts[k]);
    j["numeric"] = to_string(r.verdict);
    j["agree"] = closed.verdicts[k] == r.verdict;
    eqs.push_back(j);
  }
  out["M"] = eqs[0]["M"];
  out["sector_half_angle"] = eqs[0]["sector_half_angle"];
  out["equilibria"] = eqs;
  emit_json(path, out);
  return kExitOk;
}

namespace {

basin::BasinProblem basin_problem(const RunConfig& cfg, const std::vector<RationalOrder>& orders) {
  if (cfg.model == ModelKind::Lotka) {
    return basin::lotka_problem({cfg.params, orders[0], orders[1]}, cfg.t_end, cfg.h);
  }
  if (cfg.generic.dimension() != 2) {
    throw ConfigError(cfg.source + ": rhs: basin scans need a two-dimensional generic model");
  }
  RunConfig local = cfg;
  local.orders = orders;
  basin::BasinProblem problem;
  problem.make_ivp = [local](basin::Point start) { return generic_ivp(local, {start[0], start[1]}); };
  problem.equilibria = cfg.generic.equilibria;
  problem.description = "generic";
  return problem;
}

std::string outcome_color(const basin::Outcome& o) {
  static const char* palette[] = {"#9ecae1", "#a1d99b", "#fdd0a2", "#dadaeb"};
  switch (o.kind) {
    case basin::Outcome::Kind::ConvergedTo:
      return palette[static_cast<std::size_t>(o.equilibrium) % 4];
    case basin::Outcome::Kind::Escaped:
      return "#fc9272";
    case basin::Outcome::Kind::Undetermined:
      break;
  }
  return "#f0f0f0";
}

void run_scan(const RunConfig& cfg, const Options& options, const std::string& name,
              const std::vector<RationalOrder>& orders) {
  const auto problem = basin_problem(cfg, orders);
  if (cfg.target < 0 || static_cast<std::size_t>(cfg.target) >= std::max<std::size_t>(1, problem.equilibria.size())) {
    throw ConfigError(cfg.source + ": target: no equilibrium with index " + std::to_string(cfg.target));
  }
  basin::ScanConfig sc;
  sc.t_end = cfg.t_end;
  sc.h = cfg.h;
  sc.solver.escape_magnitude = cfg.escape;
  sc.classifier = cfg.classifier;
  sc.workers = options.workers;
  const auto map = basin::scan_basin(problem, cfg.grid, sc);
  const auto boundary = basin::boundary_extract(map, cfg.target);

  std::vector<std::pair<std::string, std::string>> meta = {
      {"model", problem.description},
      {"orders", orders_text(orders)},
      {"t_end", format_number(cfg.t_end)},
      {"h", format_number(cfg.h)},
      {"epsilon", format_number(cfg.classifier.epsilon)},
      {"window_fraction", format_number(cfg.classifier.window_fraction)},
      {"escape", format_number(cfg.escape)},
      {"grid", fmt::format("y1 [{}, {}] y2 [{}, {}] {}x{}", format_number(cfg.grid.y1_lo),
                           format_number(cfg.grid.y1_hi), format_number(cfg.grid.y2_lo),
                           format_number(cfg.grid.y2_hi), cfg.grid.n1, cfg.grid.n2)}};
  if (cfg.model == ModelKind::Lotka) {
    meta.insert(meta.begin() + 1, {"params", fmt::format("a={} b={} c={}", format_number(cfg.params.a),
                                                          format_number(cfg.params.b), format_number(cfg.params.c))});
  }
  std::string eq_text;
  for (std::size_t k = 0; k < map.equilibria.size(); ++k) {
    eq_text += (k ? "; " : "") + std::to_string(k) + "=(";
    for (std::size_t c = 0; c < map.equilibria[k].size(); ++c) eq_text += (c ? "," : "") + format_number(map.equilibria[k][c]);
    eq_text += ")";
  }
  meta.emplace_back("equilibria", eq_text);

  if (wants(options, "csv")) {
    emit(options.out / (name + "_basin.csv"), basin_csv(map, meta));
    emit(options.out / (name + "_boundary.csv"), points_csv(boundary.points));
  }
  json counts = {{"escaped", map.count(basin::Outcome::escaped())},
                 {"undetermined", map.count(basin::Outcome::undetermined())}};
  json conv = json::array();
  for (std::size_t k = 0; k < map.equilibria.size(); ++k) conv.push_back(map.count(basin::Outcome::converged(static_cast<int>(k))));
  counts["converged"] = conv;
  json side = {{"command", "basin"}, {"name", name}, {"orders", orders_json(orders)}, {"counts", counts},
               {"target", cfg.target}, {"boundary_points", boundary.points.size()}};
  json metadata = json::object();
  for (const auto& [k, v] : meta) metadata[k] = v;
  side["metadata"] = metadata;
  if (!boundary.note.empty()) side["boundary_note"] = boundary.note;
  emit_json(options.out / (name + "_basin.json"), side);

  if (wants(options, "svg")) {
    const auto& g = cfg.grid;
    const double hx = g.n1 > 1 ? 0.5 * g.dy1() : 0.5;
    const double hy = g.n2 > 1 ? 0.5 * g.dy2() : 0.5;
    SvgPlot svg(g.y1_lo - hx, g.y1_hi + hx, g.y2_lo - hy, g.y2_hi + hy, name + " basin (" + orders_text(orders) + ")");
    for (std::size_t i = 0; i < g.n1; ++i) {
      for (std::size_t j = 0; j < g.n2; ++j) {
        const auto n = g.node(i, j);
        svg.cell(n[0] - hx, n[0] + hx, n[1] - hy, n[1] + hy, outcome_color(map.at(i, j)));
      }
    }
    svg.polyline(boundary.points, "black", 1.2, true);
    for (std::size_t k = 0; k < map.equilibria.size(); ++k) {
      const auto& e = map.equilibria[k];
      const std::array<double, 2> pt = e.size() == 4 ? std::array<double, 2>{e[2], e[3]} : std::array<double, 2>{e[0], e[1]};
      svg.marker(pt, "#d62728", std::to_string(k));
      svg.legend("converged to " + std::to_string(k), outcome_color(basin::Outcome::converged(static_cast<int>(k))));
    }
    svg.legend("escaped", outcome_color(basin::Outcome::escaped()));
    svg.legend("undetermined", outcome_color(basin::Outcome::undetermined()));
    emit(options.out / (name + "_basin.svg"), svg.render());
  }
}

}  // namespace

int cmd_basin(const RunConfig& cfg, const Options& options) {
  run_scan(cfg, options, cfg.name, cfg.orders);
  for (const auto& scan : cfg.scans) run_scan(cfg, options, scan.name, scan.orders);
  return kExitOk;
}

namespace {

lotka::SeparatrixTrace trace_for(const RunConfig& cfg) {
  if (cfg.model != ModelKind::Lotka) throw ConfigError(cfg.source + ": model: separatrix needs the lotka model");
  lotka::SeparatrixOptions so;
  so.budget = cfg.sep_budget;
  so.step = cfg.sep_step;
  so.window = cfg.sep_window;
  try {
    return lotka::separatrix_trace(cfg.params, so);
  } catch (const DomainError& e) {
    throw UnsupportedCase(e.what());
  }
}

}  // namespace

int cmd_separatrix(const RunConfig& cfg, const Options& options) {
  const auto trace = trace_for(cfg);
  const auto line = trace.polyline();
  std::string csv = "y1,y2,residual\n";
  double worst = 0.0;
  bool residual_ok = true;
  for (const auto& p : line) {
    double r = NAN;
    try {
      r = lotka::separatrix_residual(cfg.params, p);
      worst = std::max(worst, std::abs(r));
    } catch (const DomainError&) {
      residual_ok = false;
    }
    csv += format_number(p[0]) + "," + format_number(p[1]) + "," + format_number(r) + "\n";
  }
  if (wants(options, "csv")) emit(options.out / (cfg.name + "_separatrix.csv"), csv);
  json side = {{"command", "separatrix"},
               {"name", cfg.name},
               {"params", lotka_params_json(cfg.params)},
               {"saddle", trace.saddle},
               {"direction", trace.direction},
               {"points", line.size()},
               {"truncated", trace.truncated},
               {"residual_defined", residual_ok}};
  side["max_abs_residual"] = residual_ok ? json(worst) : json(nullptr);
  emit_json(options.out / (cfg.name + "_separatrix.json"), side);
  if (wants(options, "svg")) {
    const auto b = cfg.sep_window ? std::array<double, 4>{cfg.sep_window->y1_lo, cfg.sep_window->y1_hi,
                                                          cfg.sep_window->y2_lo, cfg.sep_window->y2_hi}
                                  : bounds(line);
    SvgPlot svg(b[0], b[1], b[2], b[3], cfg.name + " separatrix");
    svg.polyline(line, "#1f77b4");
    svg.marker(trace.saddle, "#d62728", "saddle");
    emit(options.out / (cfg.name + "_separatrix.svg"), svg.render());
  }
  return kExitOk;
}

int cmd_portrait(const RunConfig& cfg, const Options& options) {
  std::vector<std::vector<double>> starts = cfg.starts;
  if (starts.empty()) starts.push_back(start_of(cfg));
  const auto& g = cfg.grid;
  SvgPlot svg(g.y1_lo, g.y1_hi, g.y2_lo, g.y2_hi, cfg.name + " portrait (" + orders_text(cfg.orders) + ")");
  if (cfg.model == ModelKind::Lotka) {
    // Nullclines: y1 = 0, y1 = c/b (f2 = 0) and y2 = 0, y2 = a/b (f1 = 0).
    const auto& p = cfg.params;
    for (double x : {0.0, p.c / p.b}) svg.polyline({{x, g.y2_lo}, {x, g.y2_hi}}, "#bbbbbb", 1.0, true);
    for (double y : {0.0, p.a / p.b}) svg.polyline({{g.y1_lo, y}, {g.y1_hi, y}}, "#bbbbbb", 1.0, true);
    if (p.a * p.c < 0) {
      lotka::SeparatrixOptions so;
      so.window = lotka::Box{g.y1_lo, g.y1_hi, g.y2_lo, g.y2_hi};
      svg.polyline(lotka::separatrix_trace(p, so).polyline(), "#555555", 1.2, true);
      svg.legend("separatrix (order 1)", "#555555");
    }
  }
  std::string csv = "run,t";
  std::vector<std::string> names;
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  SolverOptions so;
  so.escape_magnitude = cfg.escape;
  json runs = json::array();
  std::vector<std::array<double, 2>> equilibria;
  std::string rows;
  for (std::size_t r = 0; r < starts.size(); ++r) {
    const Prepared p = prepare(cfg, starts[r]);
    if (r == 0) {
      names = p.names;
      equilibria = p.equilibria;
    }
    const Trajectory traj = reorder(abm_solve(p.ivp, so), p.columns);
    svg.polyline(plane(traj), colors[r % 7]);
    svg.marker(plane(traj).front(), colors[r % 7]);
    for (std::size_t k = 0; k < traj.size(); ++k) {
      rows += std::to_string(r) + "," + format_number(traj.time(k));
      for (double v : traj.state(k)) rows += "," + format_number(v);
      rows += "\n";
    }
    runs.push_back({{"start", starts[r]}, {"escaped", traj.escaped()}, {"rows", traj.size()}});
  }
  for (const auto& n : names) csv += "," + n;
  csv += "\n" + rows;
  for (std::size_t k = 0; k < equilibria.size(); ++k) svg.marker(equilibria[k], "#d62728", "Y" + std::to_string(k + 1) + "*");
  if (wants(options, "csv")) emit(options.out / (cfg.name + "_portrait.csv"), csv);
  emit(options.out / (cfg.name + "_portrait.svg"), svg.render());
  emit_json(options.out / (cfg.name + "_portrait.json"),
            {{"command", "portrait"}, {"name", cfg.name}, {"orders", orders_json(cfg.orders)}, {"runs", runs}});
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Fractional Lotka-Volterra toolkit: simulation, stability, basins, separatrix"};
  app.require_subcommand(1);
  std::string config_path;
  Options options;
  std::string out_dir = ".";
  std::vector<std::string> formats;
  std::vector<std::string> sets;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config,-c", config_path, "YAML run configuration")->required()->envname("FLV_CONFIG");
    sub->add_option("--out,-o", out_dir, "output directory")->envname("FLV_OUT");
    sub->add_option("--format,-f", formats, "csv, svg or json (repeatable)")
        ->check(CLI::IsMember({"csv", "svg", "json"}))
        ->delimiter(',')
        ->envname("FLV_FORMAT");
    sub->add_option("--workers,-w", options.workers, "threads for basin scans (0 = runtime default)")
        ->check(CLI::NonNegativeNumber)
        ->envname("FLV_WORKERS");
    sub->add_option("--set", sets, "override a config key: key.path=value (repeatable)")->envname("FLV_SET")->delimiter(';');
  };
  CLI::App* simulate = app.add_subcommand("simulate", "integrate one trajectory");
  CLI::App* stability = app.add_subcommand("stability", "sector stability report per equilibrium");
  CLI::App* basin = app.add_subcommand("basin", "grid scan of the domain of attraction");
  CLI::App* separatrix = app.add_subcommand("separatrix", "trace the integer-order separatrix");
  CLI::App* portrait = app.add_subcommand("portrait", "phase portrait of several trajectories");
  for (CLI::App* sub : {simulate, stability, basin, separatrix, portrait}) add_common(sub);
  simulate->add_flag("--detect-ties", options.detect_ties, "report self-intersections in the JSON sidecar")
      ->envname("FLV_DETECT_TIES");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!formats.empty()) {
      options.formats.clear();
      for (const auto& f : formats) options.formats.insert(f);
    }
    options.out = out_dir;
    std::vector<Override> overrides;
    for (const auto& s : sets) overrides.push_back(parse_override(s));
    const RunConfig cfg = load_config(config_path, overrides);
    if (simulate->parsed()) return cmd_simulate(cfg, options);
    if (stability->parsed()) return cmd_stability(cfg, options);
    if (basin->parsed()) return cmd_basin(cfg, options);
    if (separatrix->parsed()) return cmd_separatrix(cfg, options);
    return cmd_portrait(cfg, options);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedCase& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace flv::cli
