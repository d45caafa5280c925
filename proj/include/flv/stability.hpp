#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flv/polynomial.hpp"
#include "flv/rational.hpp"

namespace flv {

enum class Verdict { Stable, Unstable, Marginal };

[[nodiscard]] std::string_view to_string(Verdict v);

/// Linearized system at an equilibrium together with its rational orders.
/// Row i of the characteristic matrix carries lambda^{M * v_i / u_i}.
struct SectorProblem {
  Eigen::MatrixXd jacobian;
  std::vector<RationalOrder> orders;
  std::int64_t multiple = 1;  // M

  /// e_i = M v_i / u_i.
  [[nodiscard]] std::vector<std::int64_t> exponents() const;
};

/// Builds a SectorProblem with M = scale * lcm(u_i). scale > 1 expresses the same
/// orders over a common denominator k times larger (used to check that verdicts do
/// not depend on the representation). Throws InputError on dimension mismatch,
/// an empty order list, n > 8, or scale < 1.
[[nodiscard]] SectorProblem make_sector_problem(Eigen::MatrixXd jacobian,
                                                std::vector<RationalOrder> orders,
                                                std::int64_t scale = 1);

/// det(diag(lambda^{e_1}, ..., lambda^{e_n}) - J), expanded by cofactors.
[[nodiscard]] Polynomial characteristic_polynomial(const SectorProblem& problem);

struct RootInfo {
  Complex value;
  double abs_arg = 0.0;  // |arg(value)|, principal branch
};

struct StabilityReport {
  std::vector<RootInfo> roots;
  std::int64_t multiple = 1;
  double sector_half_angle = 0.0;  // pi / (2M)
  Verdict verdict = Verdict::Marginal;
  RootInfo witness;  // root with the smallest |arg|

  // Filled by the higher-level pipelines; empty when only classify_sector ran.
  Polynomial polynomial;
  Eigen::MatrixXd jacobian;
};

inline constexpr double kDefaultTolBand = 1e-8;

/// Stable iff every |arg| exceeds pi/(2M) + tol_band, Unstable iff some |arg| is
/// below pi/(2M) - tol_band, Marginal otherwise. Throws InputError on empty roots.
[[nodiscard]] StabilityReport classify_sector(std::span<const Complex> roots, std::int64_t multiple,
                                              double tol_band = kDefaultTolBand);

/// characteristic_polynomial -> polynomial_roots -> classify_sector.
[[nodiscard]] StabilityReport analyze_sector_problem(const SectorProblem& problem,
                                                     double tol_band = kDefaultTolBand);

/// Autonomous vector field x -> f(x), as seen by the equilibrium analysis.
using StateMap = std::function<std::vector<double>(std::span<const double>)>;
using JacobianMap = std::function<Eigen::MatrixXd(std::span<const double>)>;

struct EquilibriumModel {
  StateMap rhs;
  /// Optional analytic Jacobian; central differences are used when empty.
  JacobianMap jacobian;
};

/// Central-difference Jacobian with absolute step `step`.
[[nodiscard]] Eigen::MatrixXd finite_difference_jacobian(const StateMap& f,
                                                         std::span<const double> x,
                                                         double step = 1e-6);

struct EquilibriumOptions {
  double tol_band = kDefaultTolBand;
  double residual_tolerance = 1e-8;
  std::int64_t scale = 1;
};

/// Linearizes `model` at `point` and applies the sector test.
/// Throws PreconditionError (with the residual) when max|f(point)| exceeds the
/// residual tolerance, DomainError when an order lies outside (0, 1].
[[nodiscard]] StabilityReport analyze_equilibrium(const EquilibriumModel& model,
                                                  std::span<const double> point,
                                                  std::span<const RationalOrder> orders,
                                                  const EquilibriumOptions& options = {});

}  // namespace flv
