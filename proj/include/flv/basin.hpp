#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "flv/lotka.hpp"
#include "flv/solver.hpp"

namespace flv::basin {

using Point = std::array<double, 2>;

/// Regular lattice of initial conditions, nodes on both ends of each range.
struct GridSpec {
  double y1_lo = -4.0, y1_hi = 4.0;
  double y2_lo = -4.0, y2_hi = 4.0;
  std::size_t n1 = 2, n2 = 2;

  [[nodiscard]] std::size_t size() const { return n1 * n2; }
  /// Node (i, j): i along y1, j along y2.
  [[nodiscard]] Point node(std::size_t i, std::size_t j) const;
  [[nodiscard]] double dy1() const { return (y1_hi - y1_lo) / static_cast<double>(n1 - 1); }
  [[nodiscard]] double dy2() const { return (y2_hi - y2_lo) / static_cast<double>(n2 - 1); }
};

/// Throws InputError unless lo < hi on both axes and n1, n2 >= 1.
void validate(const GridSpec& grid);

struct Outcome {
  enum class Kind { ConvergedTo, Escaped, Undetermined };
  Kind kind = Kind::Undetermined;
  int equilibrium = -1;  // index into the equilibria list for ConvergedTo

  static Outcome converged(int index) { return {Kind::ConvergedTo, index}; }
  static Outcome escaped() { return {Kind::Escaped, -1}; }
  static Outcome undetermined() { return {Kind::Undetermined, -1}; }

  [[nodiscard]] bool converged_to(int index) const {
    return kind == Kind::ConvergedTo && equilibrium == index;
  }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

[[nodiscard]] std::string_view to_string(Outcome::Kind k);

struct ClassifierConfig {
  double epsilon = 1e-3;        // scaled by max(1, |equilibrium|)
  double window_fraction = 0.1; // trailing share of the trajectory that must stay close
};

/// Escaped if `escaped`; ConvergedTo(k) if every state in the trailing window lies
/// within epsilon * max(1, |Y_k|) of equilibrium k (Euclidean); Undetermined otherwise.
/// Throws InputError for an empty trajectory or bad configuration.
[[nodiscard]] Outcome classify_trajectory(const Trajectory& traj,
                                         const std::vector<State>& equilibria,
                                         const ClassifierConfig& config, bool escaped);

/// Family of problems indexed by a plane point: how to build the IVP started at
/// (y1, y2), which equilibria to classify against, and which lines are invariant
/// (nodes exactly on them are nudged by +1e-9 in both coordinates).
struct BasinProblem {
  std::function<FractionalIVP(Point start)> make_ivp;
  std::vector<State> equilibria;
  std::vector<double> y1_lines;
  std::vector<double> y2_lines;
  std::string description;
};

inline constexpr double kNodeNudge = 1e-9;

/// Basin problem for the planar (orders <= 1) or lifted (orders in (1, 2), zero
/// initial slopes) Lotka-Volterra system. Invariant lines are the nullclines.
[[nodiscard]] BasinProblem lotka_problem(const lotka::System& system, double t_end, double h);

struct ScanConfig {
  double t_end = 40.0;
  double h = 0.05;
  SolverOptions solver;
  ClassifierConfig classifier;
  /// OpenMP threads for scan_basin; 0 keeps the runtime default.
  int workers = 0;
};

/// Labels stored row-major in i (y1 index): labels[i * n2 + j].
struct BasinMap {
  GridSpec grid;
  std::vector<Outcome> labels;
  std::vector<State> equilibria;
  std::string description;
  double t_end = 0.0;
  double h = 0.0;
  ClassifierConfig classifier;

  [[nodiscard]] const Outcome& at(std::size_t i, std::size_t j) const { return labels[i * grid.n2 + j]; }
  [[nodiscard]] std::size_t count(const Outcome& o) const;
};

/// Start point actually simulated for node (i, j) after nudging off invariant lines.
[[nodiscard]] Point start_point(const BasinProblem& problem, const GridSpec& grid, std::size_t i,
                                std::size_t j);

/// Integrates and classifies a single node.
[[nodiscard]] Outcome scan_node(const BasinProblem& problem, const GridSpec& grid,
                                const ScanConfig& config, std::size_t i, std::size_t j);

/// Parallel scan: grid nodes are distributed over OpenMP threads, each writing its
/// own slot of the label array. Output is identical to scan_basin_reference.
[[nodiscard]] BasinMap scan_basin(const BasinProblem& problem, const GridSpec& grid,
                                  const ScanConfig& config);

/// Serial reference scan.
[[nodiscard]] BasinMap scan_basin_reference(const BasinProblem& problem, const GridSpec& grid,
                                            const ScanConfig& config);

struct BoundaryResult {
  std::vector<Point> points;  // edge midpoints, chained by nearest neighbour
  std::string note;           // set when the map has no boundary for the target
};

/// Midpoints of grid edges whose endpoints disagree on ConvergedTo(target).
[[nodiscard]] BoundaryResult boundary_extract(const BasinMap& map, int target);

}  // namespace flv::basin
