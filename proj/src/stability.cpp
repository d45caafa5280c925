#include "flv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flv/errors.hpp"

namespace flv {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "stable";
    case Verdict::Unstable:
      return "unstable";
    case Verdict::Marginal:
      return "marginal";
  }
  return "marginal";
}

std::vector<std::int64_t> SectorProblem::exponents() const {
  std::vector<std::int64_t> e;
  e.reserve(orders.size());
  for (const auto& o : orders) {
    e.push_back(multiple / o.den * o.num);
  }
  return e;
}

SectorProblem make_sector_problem(Eigen::MatrixXd jacobian, std::vector<RationalOrder> orders,
                                  std::int64_t scale) {
  if (orders.empty()) {
    throw InputError("sector problem: no orders given");
  }
  const auto n = static_cast<Eigen::Index>(orders.size());
  if (jacobian.rows() != n || jacobian.cols() != n) {
    throw InputError("sector problem: " + std::to_string(jacobian.rows()) + "x" +
                     std::to_string(jacobian.cols()) + " Jacobian for " +
                     std::to_string(orders.size()) + " orders");
  }
  if (n > 8) {
    throw InputError("sector problem: at most 8 states are supported");
  }
  if (scale < 1) {
    throw InputError("sector problem: scale must be a positive integer");
  }
  SectorProblem p;
  p.multiple = common_multiple(orders) * scale;
  p.jacobian = std::move(jacobian);
  p.orders = std::move(orders);
  return p;
}

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

Polynomial cofactor_determinant(const PolyMatrix& m, std::vector<std::size_t>& cols,
                                std::size_t row) {
  const std::size_t n = m.size();
  if (row == n) {
    return Polynomial({1.0});
  }
  Polynomial det;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const std::size_t c = cols[k];
    if (!m[row][c].is_zero()) {
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
      Polynomial minor = cofactor_determinant(m, cols, row + 1);
      cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
      Polynomial term = m[row][c] * minor;
      if (sign > 0) {
        det += term;
      } else {
        det -= term;
      }
    }
    sign = -sign;
  }
  return det;
}

}  // namespace

Polynomial characteristic_polynomial(const SectorProblem& problem) {
  const auto n = static_cast<std::size_t>(problem.jacobian.rows());
  if (problem.orders.size() != n || problem.jacobian.cols() != problem.jacobian.rows()) {
    throw InputError("characteristic_polynomial: dimension mismatch");
  }
  const auto e = problem.exponents();
  PolyMatrix m(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = problem.jacobian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      Polynomial entry(std::vector<double>{-a});
      if (i == j) {
        entry += Polynomial::monomial(static_cast<std::size_t>(e[i]));
      }
      m[i][j] = std::move(entry);
    }
  }
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    cols[j] = j;
  }
  return cofactor_determinant(m, cols, 0);
}

StabilityReport classify_sector(std::span<const Complex> roots, std::int64_t multiple,
                                double tol_band) {
  if (roots.empty()) {
    throw InputError("classify_sector: no roots");
  }
  if (multiple < 1) {
    throw InputError("classify_sector: M must be positive");
  }
  StabilityReport r;
  r.multiple = multiple;
  r.sector_half_angle = std::numbers::pi / (2.0 * static_cast<double>(multiple));
  r.roots.reserve(roots.size());
  for (const Complex& z : roots) {
    r.roots.push_back({z, std::abs(std::arg(z))});
  }
  r.witness = *std::min_element(r.roots.begin(), r.roots.end(),
                                [](const RootInfo& a, const RootInfo& b) { return a.abs_arg < b.abs_arg; });
  const double gap = r.witness.abs_arg - r.sector_half_angle;
  if (gap > tol_band) {
    r.verdict = Verdict::Stable;
  } else if (gap < -tol_band) {
    r.verdict = Verdict::Unstable;
  } else {
    r.verdict = Verdict::Marginal;
  }
  return r;
}

StabilityReport analyze_sector_problem(const SectorProblem& problem, double tol_band) {
  Polynomial poly = characteristic_polynomial(problem);
  const auto roots = polynomial_roots(poly);
  StabilityReport r = classify_sector(roots, problem.multiple, tol_band);
  r.polynomial = std::move(poly);
  r.jacobian = problem.jacobian;
  return r;
}

Eigen::MatrixXd finite_difference_jacobian(const StateMap& f, std::span<const double> x,
                                           double step) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd jac(n, n);
  std::vector<double> xp(x.begin(), x.end());
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    xp[sj] = x[sj] + step;
    const auto fp = f(xp);
    xp[sj] = x[sj] - step;
    const auto fm = f(xp);
    xp[sj] = x[sj];
    if (fp.size() != x.size() || fm.size() != x.size()) {
      throw InputError("finite_difference_jacobian: rhs dimension mismatch");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto si = static_cast<std::size_t>(i);
      jac(i, j) = (fp[si] - fm[si]) / (2.0 * step);
    }
  }
  return jac;
}

StabilityReport analyze_equilibrium(const EquilibriumModel& model, std::span<const double> point,
                                    std::span<const RationalOrder> orders,
                                    const EquilibriumOptions& options) {
  if (!model.rhs) {
    throw InputError("analyze_equilibrium: missing right-hand side");
  }
  if (orders.size() != point.size()) {
    throw InputError("analyze_equilibrium: " + std::to_string(orders.size()) + " orders for a " +
                     std::to_string(point.size()) + "-dimensional point");
  }
  for (const auto& o : orders) {
    if (o.num <= 0 || o.den <= 0 || o.num > o.den) {
      throw DomainError("analyze_equilibrium: orders must lie in (0, 1]");
    }
  }
  const auto f = model.rhs(point);
  double residual = 0.0;
  for (double v : f) {
    residual = std::max(residual, std::abs(v));
  }
  if (f.size() != point.size() || !(residual <= options.residual_tolerance)) {
    throw PreconditionError("analyze_equilibrium: point is not an equilibrium (max |f| = " +
                            std::to_string(residual) + ")");
  }
  Eigen::MatrixXd jac =
      model.jacobian ? model.jacobian(point) : finite_difference_jacobian(model.rhs, point);
  const auto problem = make_sector_problem(std::move(jac),
                                           std::vector<RationalOrder>(orders.begin(), orders.end()),
                                           options.scale);
  return analyze_sector_problem(problem, options.tol_band);
}

}  // namespace flv
