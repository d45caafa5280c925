#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "flv/rational.hpp"
#include "flv/solver.hpp"
#include "flv/stability.hpp"

namespace flv::lotka {

using Point = std::array<double, 2>;

/// D^alpha y1 = y1 (a - b y2),  D^beta y2 = y2 (-c + b y1).
struct Params {
  double a = 1.0;
  double b = -1.0;
  double c = 1.0;
};

/// Throws DomainError if b == 0 or any coefficient is non-finite.
void validate(const Params& p);

struct System {
  Params params;
  RationalOrder alpha;
  RationalOrder beta;
};

/// Throws DomainError unless both orders lie in (0, 2).
void validate(const System& s);

[[nodiscard]] Point rhs(const Params& p, Point y);

/// [(0, 0), (c/b, a/b)]. Throws DomainError when b == 0.
[[nodiscard]] std::array<Point, 2> equilibria(const Params& p);

/// [[a - b y2, -b y1], [b y2, -c + b y1]].
[[nodiscard]] Eigen::Matrix2d jacobian(const Params& p, Point y);

enum class OrderCase {
  Fractional,  // both orders in (0, 1]
  Lifted,      // both orders in (1, 2)
  Mixed,       // one of each; not analyzed
};

[[nodiscard]] OrderCase classify_orders(const System& s);
[[nodiscard]] std::string_view to_string(OrderCase c);

struct ClosedFormVerdicts {
  OrderCase order_case = OrderCase::Fractional;
  std::array<Verdict, 2> verdicts{};  // indexed like equilibria()
};

/// Stability read off the sign conditions on a and c.
/// Fractional case: Y1 stable iff a < 0 and c > 0; Y2 stable iff a c > 0 (Marginal
/// when alpha + beta == 2, where the roots sit on the sector boundary). Zero a or c
/// makes the affected verdict Marginal. Lifted case: both Unstable.
/// Throws UnsupportedCase for mixed orders.
[[nodiscard]] ClosedFormVerdicts closed_form_stability(const System& s);

/// 4-state rewrite of a system with both orders in (1, 2).
/// State order is (y3, y4, y1, y2) with y3 = y1', y4 = y2'.
struct LiftedSystem {
  Params params;
  RationalOrder alpha1;  // alpha - 1
  RationalOrder beta1;   // beta - 1

  [[nodiscard]] std::array<RationalOrder, 4> orders() const;
  [[nodiscard]] std::array<double, 4> rhs(std::span<const double> state) const;
  /// (0, 0, 0, 0) and (0, 0, c/b, a/b).
  [[nodiscard]] std::array<std::array<double, 4>, 2> equilibria() const;
  /// Linearization used by the lifted stability analysis (see README): the
  /// 2x2 block of the planar Jacobian at the matching planar equilibrium, followed
  /// by an identity block for the two integrator states.
  [[nodiscard]] Eigen::Matrix4d jacobian(std::span<const double> state) const;
};

/// Throws DomainError unless 1 < alpha < 2 and 1 < beta < 2.
[[nodiscard]] LiftedSystem lift(const System& s);

/// Numeric pipeline (Jacobian -> characteristic polynomial -> roots -> sector test)
/// at equilibrium `index` (0 or 1). Lifted systems are analyzed in 4-D.
/// `scale` multiplies the common denominator M. Throws UnsupportedCase for mixed orders.
[[nodiscard]] StabilityReport numeric_stability(const System& s, std::size_t index,
                                                std::int64_t scale = 1,
                                                double tol_band = kDefaultTolBand);

/// Caputo initial-value problem for the planar system (orders must be <= 1).
[[nodiscard]] FractionalIVP make_ivp(const System& s, Point y0, double t_end, double h);

/// Caputo problem for the lifted system with initial slopes (y3, y4) = `slope0`.
[[nodiscard]] FractionalIVP make_lifted_ivp(const LiftedSystem& s, Point y0, Point slope0,
                                            double t_end, double h);

/// F(y1, y2) = y2^a y1^c - (a/b)^a (c/b)^c exp(b (y1 + y2) - (a + c)).
/// Zero on the separatrix through the saddle. Negative bases are only accepted
/// with integer exponents; otherwise DomainError.
[[nodiscard]] double separatrix_residual(const Params& p, Point y);

struct SeparatrixTrace {
  Point saddle{};
  /// Unit stable eigenvector at the saddle.
  Point direction{};
  /// Branches leaving the saddle along +direction and -direction. Each starts at
  /// saddle +/- delta * direction and is sampled every `step` of arclength.
  std::vector<Point> forward;
  std::vector<Point> backward;
  /// A branch ran into a point where the field vanishes or left the finite domain.
  bool truncated = false;

  /// reverse(backward), saddle, forward.
  [[nodiscard]] std::vector<Point> polyline() const;
};

inline constexpr double kSeparatrixOffset = 1e-6;

struct Box {
  double y1_lo, y1_hi, y2_lo, y2_hi;
  [[nodiscard]] bool contains(Point y) const {
    return y[0] >= y1_lo && y[0] <= y1_hi && y[1] >= y2_lo && y[1] <= y2_hi;
  }
};

struct SeparatrixOptions {
  double budget = 20.0;  // arclength per branch
  double step = 1e-3;    // arclength between emitted points
  /// Branches stop (without being flagged truncated) on leaving this box.
  std::optional<Box> window;
  /// Start along -direction first; swaps the two branches.
  bool flip_direction = false;
};

/// Traces the stable manifold of the saddle (c/b, a/b) of the integer-order
/// system by integrating the normalized reversed field with RK4 (internal step
/// <= 1e-3). Budget 0 yields only the saddle.
/// Throws DomainError when b == 0 or the equilibrium is not a saddle (a c >= 0).
[[nodiscard]] SeparatrixTrace separatrix_trace(const Params& p, const SeparatrixOptions& options = {});

/// Nullcline cell (i, j): i locates y1 among {0, c/b}, j locates y2 among {0, a/b}.
/// Each index is 0 (at or below the lower line), 1 (up to the upper line) or 2.
struct Region {
  int i = 0;
  int j = 0;
  friend bool operator==(const Region&, const Region&) = default;
};

[[nodiscard]] Region isocline_region(const Params& p, Point y);

}  // namespace flv::lotka
