#include "flv/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "flv/errors.hpp"
#include "flv/gamma.hpp"

namespace flv {

void Trajectory::push_back(double t, std::span<const double> y) {
  times_.push_back(t);
  data_.insert(data_.end(), y.begin(), y.end());
}

void validate(const FractionalIVP& ivp) {
  if (ivp.y0.empty()) {
    throw InputError("ivp: empty initial state");
  }
  if (ivp.orders.size() != ivp.y0.size()) {
    throw InputError("ivp: " + std::to_string(ivp.orders.size()) + " orders for a " +
                     std::to_string(ivp.y0.size()) + "-dimensional state");
  }
  for (double a : ivp.orders) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw DomainError("ivp: every order must lie in (0, 1]");
    }
  }
  for (double v : ivp.y0) {
    if (!std::isfinite(v)) {
      throw InputError("ivp: non-finite initial state");
    }
  }
  if (!(ivp.h > 0.0) || !(ivp.t_end > 0.0) || !std::isfinite(ivp.t_end)) {
    throw DomainError("ivp: h and t_end must be positive and finite");
  }
  if (ivp.t_end / ivp.h < 1.0 - 1e-12) {
    throw DomainError("ivp: t_end / h must be at least 1");
  }
  if (!ivp.rhs) {
    throw InputError("ivp: missing right-hand side");
  }
}

std::size_t step_count(const FractionalIVP& ivp) {
  const double ratio = ivp.t_end / ivp.h;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::floor(ratio));
}

double predictor_weight(double alpha, double h, std::size_t j, std::size_t n) {
  const auto k = static_cast<double>(n - j);
  return std::pow(h, alpha) / alpha * (std::pow(k + 1.0, alpha) - std::pow(k, alpha));
}

double corrector_weight(double alpha, std::size_t j, std::size_t n) {
  const auto nn = static_cast<double>(n);
  if (j == 0) {
    return std::pow(nn, alpha + 1.0) - (nn - alpha) * std::pow(nn + 1.0, alpha);
  }
  const auto k = static_cast<double>(n - j);
  return std::pow(k + 2.0, alpha + 1.0) + std::pow(k, alpha + 1.0) -
         2.0 * std::pow(k + 1.0, alpha + 1.0);
}

namespace {

// Convolution kernels for one component, indexed by lag k = n - j.
struct Kernel {
  double alpha = 1.0;
  double predictor_scale = 0.0;  // h^a / Gamma(a + 1)
  double corrector_scale = 0.0;  // h^a / Gamma(a + 2)
  std::vector<double> pow_a;     // k^a, k = 0 .. N
  std::vector<double> pow_a1;    // k^(a+1), k = 0 .. N
  std::vector<double> predictor; // (k+1)^a - k^a
  std::vector<double> corrector; // (k+2)^(a+1) + k^(a+1) - 2 (k+1)^(a+1)

  [[nodiscard]] double corrector_first(std::size_t n) const {
    return pow_a1[n] - (static_cast<double>(n) - alpha) * pow_a[n + 1];
  }
};

Kernel make_kernel(double alpha, double h, std::size_t steps) {
  Kernel w;
  w.alpha = alpha;
  w.predictor_scale = std::pow(h, alpha) / gamma(alpha + 1.0);
  w.corrector_scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  const std::size_t len = steps + 2;
  w.pow_a.resize(len + 1);
  w.pow_a1.resize(len + 1);
  for (std::size_t k = 0; k <= len; ++k) {
    const auto kk = static_cast<double>(k);
    w.pow_a[k] = std::pow(kk, alpha);
    w.pow_a1[k] = std::pow(kk, alpha + 1.0);
  }
  w.predictor.resize(steps + 1);
  w.corrector.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    w.predictor[k] = w.pow_a[k + 1] - w.pow_a[k];
    w.corrector[k] = w.pow_a1[k + 2] + w.pow_a1[k] - 2.0 * w.pow_a1[k + 1];
  }
  return w;
}

std::vector<Kernel> make_kernels(const FractionalIVP& ivp, std::size_t steps) {
  std::vector<Kernel> kernels;
  kernels.reserve(ivp.orders.size());
  for (double a : ivp.orders) {
    kernels.push_back(make_kernel(a, ivp.h, steps));
  }
  return kernels;
}

struct Workspace {
  State predicted;
  State f_predicted;
};

// One PECE step n -> n+1. history[i][j] holds f_i(t_j, y_j) for j = 0 .. n.
void advance(const std::vector<Kernel>& kernels, const std::vector<std::vector<double>>& history,
             std::size_t n, const FractionalIVP& ivp, double t_next, Workspace& ws,
             std::span<double> y_next) {
  const std::size_t dim = kernels.size();
  for (std::size_t i = 0; i < dim; ++i) {
    const Kernel& w = kernels[i];
    const double* f = history[i].data();
    const double* p = w.predictor.data();
    double sum = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      sum += p[n - j] * f[j];
    }
    ws.predicted[i] = ivp.y0[i] + w.predictor_scale * sum;
  }
  ivp.rhs(t_next, ws.predicted, ws.f_predicted);
  for (std::size_t i = 0; i < dim; ++i) {
    const Kernel& w = kernels[i];
    const double* f = history[i].data();
    const double* c = w.corrector.data();
    double sum = w.corrector_first(n) * f[0];
    for (std::size_t j = 1; j <= n; ++j) {
      sum += c[n - j] * f[j];
    }
    y_next[i] = ivp.y0[i] + w.corrector_scale * (ws.f_predicted[i] + sum);
  }
}

bool escaping(std::span<const double> y, double limit) {
  for (double v : y) {
    if (!std::isfinite(v) || std::abs(v) > limit) {
      return true;
    }
  }
  return false;
}

}  // namespace

Trajectory abm_solve(const FractionalIVP& ivp, const SolverOptions& options) {
  validate(ivp);
  const std::size_t dim = ivp.y0.size();
  const std::size_t steps = step_count(ivp);
  const auto kernels = make_kernels(ivp, steps);

  std::vector<std::vector<double>> history(dim);
  for (auto& h : history) {
    h.reserve(steps + 1);
  }
  State f(dim);
  ivp.rhs(0.0, ivp.y0, f);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!std::isfinite(f[i])) {
      throw InputError("abm_solve: right-hand side is not finite at the initial state");
    }
    history[i].push_back(f[i]);
  }

  Trajectory traj(dim, ivp.h);
  traj.reserve(steps + 1);
  traj.push_back(0.0, ivp.y0);

  Workspace ws{State(dim), State(dim)};
  State y(dim);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t_next = static_cast<double>(n + 1) * ivp.h;
    advance(kernels, history, n, ivp, t_next, ws, y);
    traj.push_back(t_next, y);
    if (escaping(y, options.escape_magnitude)) {
      traj.mark_escaped();
      break;
    }
    ivp.rhs(t_next, y, f);
    if (escaping(f, std::numeric_limits<double>::max())) {
      traj.mark_escaped();
      break;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      history[i].push_back(f[i]);
    }
  }
  return traj;
}

State recompute_step(const FractionalIVP& ivp, const Trajectory& trajectory, std::size_t n) {
  validate(ivp);
  if (n == 0 || n >= trajectory.size()) {
    throw InputError("recompute_step: step index out of range");
  }
  if (trajectory.dimension() != ivp.y0.size()) {
    throw InputError("recompute_step: trajectory dimension does not match the problem");
  }
  const std::size_t dim = ivp.y0.size();
  const auto kernels = make_kernels(ivp, n);
  std::vector<std::vector<double>> history(dim, std::vector<double>(n));
  State f(dim);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) * ivp.h;
    ivp.rhs(t, trajectory.state(j), f);
    for (std::size_t i = 0; i < dim; ++i) {
      history[i][j] = f[i];
    }
  }
  Workspace ws{State(dim), State(dim)};
  State y(dim);
  advance(kernels, history, n - 1, ivp, static_cast<double>(n) * ivp.h, ws, y);
  return y;
}

}  // namespace flv
