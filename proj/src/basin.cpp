#include "flv/basin.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "flv/errors.hpp"

namespace flv::basin {

Point GridSpec::node(std::size_t i, std::size_t j) const {
  const double y1 = n1 == 1 ? y1_lo : y1_lo + static_cast<double>(i) * dy1();
  const double y2 = n2 == 1 ? y2_lo : y2_lo + static_cast<double>(j) * dy2();
  // Pin the last node to the range end so it does not drift by rounding.
  return {i + 1 == n1 && n1 > 1 ? y1_hi : y1, j + 1 == n2 && n2 > 1 ? y2_hi : y2};
}

void validate(const GridSpec& g) {
  if (!(g.y1_lo < g.y1_hi) || !(g.y2_lo < g.y2_hi) || !std::isfinite(g.y1_lo) ||
      !std::isfinite(g.y1_hi) || !std::isfinite(g.y2_lo) || !std::isfinite(g.y2_hi)) {
    throw InputError("grid: ranges must be finite with lo < hi");
  }
  if (g.n1 < 1 || g.n2 < 1) {
    throw InputError("grid: resolution must be at least 1 on each axis");
  }
}

std::string_view to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::ConvergedTo:
      return "converged";
    case Outcome::Kind::Escaped:
      return "escaped";
    case Outcome::Kind::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

Outcome classify_trajectory(const Trajectory& traj, const std::vector<State>& equilibria,
                            const ClassifierConfig& config, bool escaped) {
  if (traj.empty()) {
    throw InputError("classify_trajectory: empty trajectory");
  }
  if (!(config.epsilon > 0.0) || !(config.window_fraction > 0.0 && config.window_fraction < 1.0)) {
    throw InputError("classify_trajectory: need epsilon > 0 and 0 < window_fraction < 1");
  }
  if (escaped) {
    return Outcome::escaped();
  }
  const std::size_t n = traj.size();
  const auto window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(config.window_fraction * static_cast<double>(n))));
  const std::size_t first = n - std::min(window, n);
  for (std::size_t k = 0; k < equilibria.size(); ++k) {
    const State& eq = equilibria[k];
    if (eq.size() != traj.dimension()) {
      throw InputError("classify_trajectory: equilibrium dimension mismatch");
    }
    double norm = 0.0;
    for (double v : eq) norm += v * v;
    const double tol = config.epsilon * std::max(1.0, std::sqrt(norm));
    bool inside = true;
    for (std::size_t s = first; s < n && inside; ++s) {
      const auto y = traj.state(s);
      double d2 = 0.0;
      for (std::size_t c = 0; c < eq.size(); ++c) {
        const double d = y[c] - eq[c];
        d2 += d * d;
      }
      inside = std::sqrt(d2) <= tol;
    }
    if (inside) {
      return Outcome::converged(static_cast<int>(k));
    }
  }
  return Outcome::undetermined();
}

BasinProblem lotka_problem(const lotka::System& system, double t_end, double h) {
  lotka::validate(system);
  BasinProblem problem;
  const lotka::Params p = system.params;
  problem.y1_lines = {0.0, p.c / p.b};
  problem.y2_lines = {0.0, p.a / p.b};
  switch (lotka::classify_orders(system)) {
    case lotka::OrderCase::Fractional: {
      const auto eq = lotka::equilibria(p);
      for (const auto& e : eq) problem.equilibria.push_back({e[0], e[1]});
      problem.make_ivp = [system, t_end, h](Point start) {
        return lotka::make_ivp(system, start, t_end, h);
      };
      problem.description = "lotka";
      break;
    }
    case lotka::OrderCase::Lifted: {
      const auto lifted = lotka::lift(system);
      for (const auto& e : lifted.equilibria()) problem.equilibria.push_back(State(e.begin(), e.end()));
      problem.make_ivp = [lifted, t_end, h](Point start) {
        return lotka::make_lifted_ivp(lifted, start, {0.0, 0.0}, t_end, h);
      };
      problem.description = "lotka-lifted";
      break;
    }
    case lotka::OrderCase::Mixed:
      throw UnsupportedCase("basin: mixed orders " + system.alpha.str() + ", " + system.beta.str() +
                            " are not supported");
  }
  return problem;
}

std::size_t BasinMap::count(const Outcome& o) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), o));
}

Point start_point(const BasinProblem& problem, const GridSpec& grid, std::size_t i, std::size_t j) {
  Point y = grid.node(i, j);
  const bool on_line =
      std::find(problem.y1_lines.begin(), problem.y1_lines.end(), y[0]) != problem.y1_lines.end() ||
      std::find(problem.y2_lines.begin(), problem.y2_lines.end(), y[1]) != problem.y2_lines.end();
  if (on_line) {
    y[0] += kNodeNudge;
    y[1] += kNodeNudge;
  }
  return y;
}

Outcome scan_node(const BasinProblem& problem, const GridSpec& grid, const ScanConfig& config,
                  std::size_t i, std::size_t j) {
  FractionalIVP ivp = problem.make_ivp(start_point(problem, grid, i, j));
  ivp.t_end = config.t_end;
  ivp.h = config.h;
  const Trajectory traj = abm_solve(ivp, config.solver);
  return classify_trajectory(traj, problem.equilibria, config.classifier, traj.escaped());
}

namespace {

BasinMap empty_map(const BasinProblem& problem, const GridSpec& grid, const ScanConfig& config) {
  validate(grid);
  if (!problem.make_ivp) {
    throw InputError("scan_basin: problem has no IVP factory");
  }
  BasinMap map;
  map.grid = grid;
  map.labels.resize(grid.size());
  map.equilibria = problem.equilibria;
  map.description = problem.description;
  map.t_end = config.t_end;
  map.h = config.h;
  map.classifier = config.classifier;
  return map;
}

}  // namespace

BasinMap scan_basin_reference(const BasinProblem& problem, const GridSpec& grid,
                              const ScanConfig& config) {
  BasinMap map = empty_map(problem, grid, config);
  for (std::size_t i = 0; i < grid.n1; ++i) {
    for (std::size_t j = 0; j < grid.n2; ++j) {
      map.labels[i * grid.n2 + j] = scan_node(problem, grid, config, i, j);
    }
  }
  return map;
}

BasinMap scan_basin(const BasinProblem& problem, const GridSpec& grid, const ScanConfig& config) {
  BasinMap map = empty_map(problem, grid, config);
  const auto total = static_cast<std::int64_t>(grid.size());
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
  // Exceptions may not cross the parallel region; keep the first one and rethrow.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::int64_t k = 0; k < total; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      map.labels[idx] = scan_node(problem, grid, config, idx / grid.n2, idx % grid.n2);
    } catch (...) {
#pragma omp critical(flv_basin_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return map;
}

BoundaryResult boundary_extract(const BasinMap& map, int target) {
  const GridSpec& g = map.grid;
  BoundaryResult out;
  std::vector<Point> mids;
  auto member = [&](std::size_t i, std::size_t j) { return map.at(i, j).converged_to(target); };
  for (std::size_t i = 0; i < g.n1; ++i) {
    for (std::size_t j = 0; j < g.n2; ++j) {
      const Point p = g.node(i, j);
      if (i + 1 < g.n1 && member(i, j) != member(i + 1, j)) {
        const Point q = g.node(i + 1, j);
        mids.push_back({0.5 * (p[0] + q[0]), p[1]});
      }
      if (j + 1 < g.n2 && member(i, j) != member(i, j + 1)) {
        const Point q = g.node(i, j + 1);
        mids.push_back({p[0], 0.5 * (p[1] + q[1])});
      }
    }
  }
  if (mids.empty()) {
    out.note = "map is uniform with respect to the target; no boundary";
    return out;
  }
  // Greedy nearest-neighbour chain from the lowest-leftmost midpoint.
  auto start = std::min_element(mids.begin(), mids.end(), [](const Point& a, const Point& b) {
    return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
  });
  std::swap(*mids.begin(), *start);
  out.points.reserve(mids.size());
  std::vector<bool> used(mids.size(), false);
  std::size_t cur = 0;
  used[0] = true;
  out.points.push_back(mids[0]);
  for (std::size_t step = 1; step < mids.size(); ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t next = cur;
    for (std::size_t k = 0; k < mids.size(); ++k) {
      if (used[k]) continue;
      const double d = std::hypot(mids[k][0] - mids[cur][0], mids[k][1] - mids[cur][1]);
      if (d < best) {
        best = d;
        next = k;
      }
    }
    used[next] = true;
    out.points.push_back(mids[next]);
    cur = next;
  }
  return out;
}

}  // namespace flv::basin
