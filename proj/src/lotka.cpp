#include "flv/lotka.hpp"

#include <algorithm>
#include <cmath>

#include "flv/errors.hpp"

namespace flv::lotka {

void validate(const Params& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c)) {
    throw DomainError("lotka: parameters must be finite");
  }
  if (p.b == 0.0) {
    throw DomainError("lotka: b must be nonzero");
  }
}

void validate(const System& s) {
  validate(s.params);
  for (const auto& o : {s.alpha, s.beta}) {
    if (o.num <= 0 || o.den <= 0 || o.num >= 2 * o.den) {
      throw DomainError("lotka: orders must lie in (0, 2), got " + o.str());
    }
  }
}

Point rhs(const Params& p, Point y) {
  return {y[0] * (p.a - p.b * y[1]), y[1] * (-p.c + p.b * y[0])};
}

std::array<Point, 2> equilibria(const Params& p) {
  validate(p);
  return {Point{0.0, 0.0}, Point{p.c / p.b, p.a / p.b}};
}

Eigen::Matrix2d jacobian(const Params& p, Point y) {
  Eigen::Matrix2d j;
  j << p.a - p.b * y[1], -p.b * y[0],
       p.b * y[1], -p.c + p.b * y[0];
  return j;
}

OrderCase classify_orders(const System& s) {
  const bool alpha_low = s.alpha.num <= s.alpha.den;
  const bool beta_low = s.beta.num <= s.beta.den;
  if (alpha_low && beta_low) {
    return OrderCase::Fractional;
  }
  if (!alpha_low && !beta_low) {
    return OrderCase::Lifted;
  }
  return OrderCase::Mixed;
}

std::string_view to_string(OrderCase c) {
  switch (c) {
    case OrderCase::Fractional:
      return "fractional";
    case OrderCase::Lifted:
      return "lifted";
    case OrderCase::Mixed:
      return "mixed";
  }
  return "mixed";
}

namespace {

[[noreturn]] void throw_mixed(const System& s) {
  throw UnsupportedCase("orders " + s.alpha.str() + " and " + s.beta.str() +
                        " straddle 1; only both-below and both-above are analyzed");
}

}  // namespace

ClosedFormVerdicts closed_form_stability(const System& s) {
  validate(s);
  ClosedFormVerdicts out;
  out.order_case = classify_orders(s);
  const double a = s.params.a;
  const double c = s.params.c;
  switch (out.order_case) {
    case OrderCase::Mixed:
      throw_mixed(s);
    case OrderCase::Lifted:
      out.verdicts = {Verdict::Unstable, Verdict::Unstable};
      return out;
    case OrderCase::Fractional:
      break;
  }
  // Y1: roots of (l^u - a)(l^v + c).
  if (a > 0.0 || c < 0.0) {
    out.verdicts[0] = Verdict::Unstable;
  } else if (a < 0.0 && c > 0.0) {
    out.verdicts[0] = Verdict::Stable;
  } else {
    out.verdicts[0] = Verdict::Marginal;
  }
  // Y2: roots of l^(u+v) + a c; on the boundary when alpha + beta == 2.
  const double ac = a * c;
  if (ac < 0.0) {
    out.verdicts[1] = Verdict::Unstable;
  } else if (ac > 0.0) {
    const bool boundary = (s.alpha.num * s.beta.den + s.beta.num * s.alpha.den) ==
                          2 * s.alpha.den * s.beta.den;
    out.verdicts[1] = boundary ? Verdict::Marginal : Verdict::Stable;
  } else {
    out.verdicts[1] = Verdict::Marginal;
  }
  return out;
}

std::array<RationalOrder, 4> LiftedSystem::orders() const {
  return {alpha1, beta1, RationalOrder{1, 1}, RationalOrder{1, 1}};
}

std::array<double, 4> LiftedSystem::rhs(std::span<const double> state) const {
  const Point f = lotka::rhs(params, {state[2], state[3]});
  return {f[0], f[1], state[0], state[1]};
}

std::array<std::array<double, 4>, 2> LiftedSystem::equilibria() const {
  return {std::array<double, 4>{0.0, 0.0, 0.0, 0.0},
          std::array<double, 4>{0.0, 0.0, params.c / params.b, params.a / params.b}};
}

Eigen::Matrix4d LiftedSystem::jacobian(std::span<const double> state) const {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j.topLeftCorner<2, 2>() = lotka::jacobian(params, {state[2], state[3]});
  j(2, 2) = 1.0;
  j(3, 3) = 1.0;
  return j;
}

LiftedSystem lift(const System& s) {
  validate(s.params);
  for (const auto& o : {s.alpha, s.beta}) {
    if (!(o.num > o.den && o.num < 2 * o.den)) {
      throw DomainError("lift: orders must lie in (1, 2), got " + o.str());
    }
  }
  return {s.params, reduce_order(s.alpha.num - s.alpha.den, s.alpha.den),
          reduce_order(s.beta.num - s.beta.den, s.beta.den)};
}

StabilityReport numeric_stability(const System& s, std::size_t index, std::int64_t scale,
                                  double tol_band) {
  validate(s);
  if (index > 1) {
    throw InputError("numeric_stability: equilibrium index must be 0 or 1");
  }
  EquilibriumOptions opts;
  opts.scale = scale;
  opts.tol_band = tol_band;
  switch (classify_orders(s)) {
    case OrderCase::Mixed:
      throw_mixed(s);
    case OrderCase::Fractional: {
      const Params p = s.params;
      EquilibriumModel model;
      model.rhs = [p](std::span<const double> y) {
        const Point f = rhs(p, {y[0], y[1]});
        return std::vector<double>{f[0], f[1]};
      };
      model.jacobian = [p](std::span<const double> y) -> Eigen::MatrixXd {
        return jacobian(p, {y[0], y[1]});
      };
      const Point eq = equilibria(p)[index];
      const std::array<RationalOrder, 2> orders{s.alpha, s.beta};
      return analyze_equilibrium(model, eq, orders, opts);
    }
    case OrderCase::Lifted: {
      const LiftedSystem lifted = lift(s);
      EquilibriumModel model;
      model.rhs = [lifted](std::span<const double> y) {
        const auto f = lifted.rhs(y);
        return std::vector<double>(f.begin(), f.end());
      };
      model.jacobian = [lifted](std::span<const double> y) -> Eigen::MatrixXd {
        return lifted.jacobian(y);
      };
      const auto eq = lifted.equilibria()[index];
      return analyze_equilibrium(model, eq, lifted.orders(), opts);
    }
  }
  throw_mixed(s);
}

FractionalIVP make_ivp(const System& s, Point y0, double t_end, double h) {
  validate(s);
  if (classify_orders(s) != OrderCase::Fractional) {
    throw DomainError("make_ivp: planar simulation needs both orders in (0, 1]; lift first");
  }
  const Params p = s.params;
  FractionalIVP ivp;
  ivp.orders = {s.alpha.value(), s.beta.value()};
  ivp.rhs = [p](double, std::span<const double> y, std::span<double> dydt) {
    dydt[0] = y[0] * (p.a - p.b * y[1]);
    dydt[1] = y[1] * (-p.c + p.b * y[0]);
  };
  ivp.y0 = {y0[0], y0[1]};
  ivp.t_end = t_end;
  ivp.h = h;
  return ivp;
}

FractionalIVP make_lifted_ivp(const LiftedSystem& s, Point y0, Point slope0, double t_end,
                              double h) {
  const Params p = s.params;
  FractionalIVP ivp;
  ivp.orders = {s.alpha1.value(), s.beta1.value(), 1.0, 1.0};
  ivp.rhs = [p](double, std::span<const double> y, std::span<double> dydt) {
    dydt[0] = y[2] * (p.a - p.b * y[3]);
    dydt[1] = y[3] * (-p.c + p.b * y[2]);
    dydt[2] = y[0];
    dydt[3] = y[1];
  };
  ivp.y0 = {slope0[0], slope0[1], y0[0], y0[1]};
  ivp.t_end = t_end;
  ivp.h = h;
  return ivp;
}

namespace {

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

double checked_pow(double base, double exponent, const char* what) {
  if (base < 0.0 && !is_integer(exponent)) {
    throw DomainError(std::string("separatrix_residual: ") + what +
                      " has a negative base with a non-integer exponent");
  }
  if (base == 0.0 && exponent < 0.0) {
    throw DomainError(std::string("separatrix_residual: ") + what + " is infinite");
  }
  return std::pow(base, exponent);
}

}  // namespace

double separatrix_residual(const Params& p, Point y) {
  validate(p);
  const double lhs = checked_pow(y[1], p.a, "y2^a") * checked_pow(y[0], p.c, "y1^c");
  const double k = checked_pow(p.a / p.b, p.a, "(a/b)^a") * checked_pow(p.c / p.b, p.c, "(c/b)^c");
  return lhs - k * std::exp(p.b * (y[0] + y[1]) - (p.a + p.c));
}

std::vector<Point> SeparatrixTrace::polyline() const {
  std::vector<Point> out;
  out.reserve(forward.size() + backward.size() + 1);
  out.insert(out.end(), backward.rbegin(), backward.rend());
  out.push_back(saddle);
  out.insert(out.end(), forward.begin(), forward.end());
  return out;
}

namespace {

constexpr double kMaxInternalStep = 1e-3;

// Unit reversed field; nullopt where the field vanishes.
std::optional<Point> reversed_direction(const Params& p, Point y) {
  const Point f = rhs(p, y);
  const double norm = std::hypot(f[0], f[1]);
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    return std::nullopt;
  }
  return Point{-f[0] / norm, -f[1] / norm};
}

// Returns false when the branch must stop (field vanished or went non-finite).
bool rk4_step(const Params& p, Point& y, double ds) {
  auto axpy = [](Point y0, double s, Point k) { return Point{y0[0] + s * k[0], y0[1] + s * k[1]}; };
  const auto k1 = reversed_direction(p, y);
  if (!k1) return false;
  const auto k2 = reversed_direction(p, axpy(y, 0.5 * ds, *k1));
  if (!k2) return false;
  const auto k3 = reversed_direction(p, axpy(y, 0.5 * ds, *k2));
  if (!k3) return false;
  const auto k4 = reversed_direction(p, axpy(y, ds, *k3));
  if (!k4) return false;
  for (int i = 0; i < 2; ++i) {
    y[i] += ds / 6.0 * ((*k1)[i] + 2.0 * (*k2)[i] + 2.0 * (*k3)[i] + (*k4)[i]);
  }
  return std::isfinite(y[0]) && std::isfinite(y[1]);
}

// Walks one branch; returns true if it was cut short by a degenerate field.
bool trace_branch(const Params& p, Point start, const SeparatrixOptions& o, std::vector<Point>& out) {
  if (o.window && !o.window->contains(start)) {
    return false;
  }
  out.push_back(start);
  const auto outputs = static_cast<std::size_t>(std::floor(o.budget / o.step + 1e-9));
  const auto substeps = static_cast<int>(std::ceil(o.step / kMaxInternalStep - 1e-9));
  const double ds = o.step / substeps;
  Point y = start;
  for (std::size_t k = 0; k < outputs; ++k) {
    for (int s = 0; s < substeps; ++s) {
      if (!rk4_step(p, y, ds)) {
        return true;
      }
    }
    if (o.window && !o.window->contains(y)) {
      return false;
    }
    out.push_back(y);
  }
  return false;
}

}  // namespace

SeparatrixTrace separatrix_trace(const Params& p, const SeparatrixOptions& options) {
  validate(p);
  if (!(options.budget >= 0.0) || !(options.step > 0.0)) {
    throw DomainError("separatrix_trace: budget must be >= 0 and step > 0");
  }
  const double ac = p.a * p.c;
  if (!(ac < 0.0)) {
    throw DomainError("separatrix_trace: (c/b, a/b) is a saddle only when a c < 0");
  }
  SeparatrixTrace trace;
  trace.saddle = {p.c / p.b, p.a / p.b};
  // Jacobian at the saddle is [[0, -c], [a, 0]]; stable eigenvalue -sqrt(-ac).
  const double lambda = -std::sqrt(-ac);
  const double norm = std::hypot(p.c, lambda);
  trace.direction = {-p.c / norm, lambda / norm};
  if (options.flip_direction) {
    trace.direction = {-trace.direction[0], -trace.direction[1]};
  }
  if (options.budget == 0.0) {
    return trace;
  }
  const Point& s = trace.saddle;
  const Point& v = trace.direction;
  const double d = kSeparatrixOffset;
  const bool cut_fwd = trace_branch(p, {s[0] + d * v[0], s[1] + d * v[1]}, options, trace.forward);
  const bool cut_bwd = trace_branch(p, {s[0] - d * v[0], s[1] - d * v[1]}, options, trace.backward);
  trace.truncated = cut_fwd || cut_bwd;
  return trace;
}

Region isocline_region(const Params& p, Point y) {
  validate(p);
  auto locate = [](double v, double line_a, double line_b) {
    const double lo = std::min(line_a, line_b);
    const double hi = std::max(line_a, line_b);
    if (v <= lo) return 0;
    if (v <= hi) return 1;
    return 2;
  };
  return {locate(y[0], 0.0, p.c / p.b), locate(y[1], 0.0, p.a / p.b)};
}

}  // namespace flv::lotka
