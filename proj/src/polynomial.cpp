#include "flv/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "flv/errors.hpp"

namespace flv {

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

Polynomial Polynomial::monomial(std::size_t k, double coeff) {
  std::vector<double> c(k + 1, 0.0);
  c[k] = coeff;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) {
    c_.pop_back();
  }
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Complex Polynomial::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) {
    return {};
  }
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * c_[k];
  }
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) {
    c_.resize(other.c_.size(), 0.0);
  }
  for (std::size_t k = 0; k < other.c_.size(); ++k) {
    c_[k] += other.c_[k];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.c_.size() > c_.size()) {
    c_.resize(other.c_.size(), 0.0);
  }
  for (std::size_t k = 0; k < other.c_.size(); ++k) {
    c_[k] -= other.c_[k];
  }
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) {
    return {};
  }
  std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Polynomial(std::move(r));
}

Polynomial operator*(double s, Polynomial p) {
  for (double& v : p.c_) {
    v *= s;
  }
  p.trim();
  return p;
}

double normalized_residual(const Polynomial& p, Complex z) {
  const double d = static_cast<double>(p.degree());
  return std::abs(p(z)) / (1.0 + std::pow(std::abs(z), d));
}

namespace {

std::vector<Complex> companion_eigenvalues(const std::vector<double>& monic) {
  // monic[k] multiplies x^k, monic.back() == 1.
  const auto d = static_cast<Eigen::Index>(monic.size() - 1);
  if (d == 1) {
    return {Complex(-monic[0], 0.0)};
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) {
    companion(i, i - 1) = 1.0;
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    companion(i, d - 1) = -monic[static_cast<std::size_t>(i)];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw DomainError("polynomial_roots: companion eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> out(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    out[static_cast<std::size_t>(i)] = ev(i);
  }
  return out;
}

// Newton on p; returns the iterate with the smallest residual seen.
Complex newton_polish(const Polynomial& p, const Polynomial& dp, Complex z) {
  Complex best = z;
  double best_residual = normalized_residual(p, z);
  for (int it = 0; it < 50 && best_residual > 0.0; ++it) {
    const Complex denom = dp(z);
    if (std::abs(denom) == 0.0) {
      break;
    }
    const Complex step = p(z) / denom;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      break;
    }
    const double r = normalized_residual(p, z);
    if (r < best_residual) {
      best = z;
      best_residual = r;
    }
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) {
      break;
    }
  }
  return best;
}

Polynomial nth_derivative(const Polynomial& p, std::size_t m) {
  Polynomial q = p;
  for (std::size_t k = 0; k < m; ++k) {
    q = q.derivative();
  }
  return q;
}

}  // namespace

std::vector<Complex> polynomial_roots(const Polynomial& p) {
  for (double v : p.coeffs()) {
    if (!std::isfinite(v)) {
      throw InputError("polynomial_roots: non-finite coefficient");
    }
  }
  if (p.degree() == 0) {
    throw InputError("polynomial_roots: degree must be at least 1");
  }

  std::vector<Complex> roots;
  roots.reserve(p.degree());

  // Exact zero roots first.
  std::size_t zeros = 0;
  while (p.coeffs()[zeros] == 0.0) {
    ++zeros;
  }
  roots.assign(zeros, Complex(0.0, 0.0));

  std::vector<double> reduced(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros),
                              p.coeffs().end());
  const double lead = reduced.back();
  for (double& v : reduced) {
    v /= lead;
  }
  if (reduced.size() <= 1) {
    return roots;
  }

  const Polynomial q(reduced);
  const Polynomial dq = q.derivative();
  std::vector<Complex> est = companion_eigenvalues(reduced);
  for (Complex& z : est) {
    z = newton_polish(q, dq, z);
  }

  // Group estimates that sit within a small relative radius of each other.
  const std::size_t n = est.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = 1.0 + std::max(std::abs(est[i]), std::abs(est[j]));
      if (std::abs(est[i] - est[j]) < 1e-4 * scale) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) {
    clusters[find(i)].push_back(i);
  }
  for (const auto& members : clusters) {
    const std::size_t m = members.size();
    if (m < 2) {
      continue;
    }
    Complex centroid = 0.0;
    double worst = 0.0;
    for (std::size_t i : members) {
      centroid += est[i];
      worst = std::max(worst, normalized_residual(q, est[i]));
    }
    centroid /= static_cast<double>(m);
    const Polynomial qm = nth_derivative(q, m - 1);
    const Polynomial dqm = qm.derivative();
    Complex z = centroid;
    for (int it = 0; it < 50; ++it) {
      const Complex denom = dqm(z);
      if (std::abs(denom) == 0.0) {
        break;
      }
      const Complex step = qm(z) / denom;
      z -= step;
      if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) {
        break;
      }
    }
    if (std::abs(z - centroid) < 1e-4 * (1.0 + std::abs(centroid)) &&
        normalized_residual(q, z) <= std::max(worst, 1e-13)) {
      for (std::size_t i : members) {
        est[i] = z;
      }
    }
  }

  roots.insert(roots.end(), est.begin(), est.end());
  return roots;
}

}  // namespace flv
