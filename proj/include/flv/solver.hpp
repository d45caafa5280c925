#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace flv {

using State = std::vector<double>;

/// Right-hand side f(t, y) of a Caputo system. Writes dim(y) values into dydt.
using VectorField = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Caputo initial-value problem D^{orders[i]} y_i = f_i(t, y), y(0) = y0.
struct FractionalIVP {
  std::vector<double> orders;  // each in (0, 1]
  VectorField rhs;
  State y0;
  double t_end = 1.0;
  double h = 0.01;
};

struct SolverOptions {
  /// Integration stops once any |y_i| exceeds this (or goes non-finite).
  double escape_magnitude = 1e4;
};

/// Uniform-grid solution. States are stored row-major, one row per time stamp.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t dimension, double h) : dim_(dimension), h_(h) {}

  [[nodiscard]] std::size_t size() const { return times_.size(); }
  [[nodiscard]] bool empty() const { return times_.empty(); }
  [[nodiscard]] std::size_t dimension() const { return dim_; }
  [[nodiscard]] double step() const { return h_; }
  [[nodiscard]] bool escaped() const { return escaped_; }

  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  [[nodiscard]] double time(std::size_t k) const { return times_[k]; }
  [[nodiscard]] std::span<const double> state(std::size_t k) const {
    return {data_.data() + k * dim_, dim_};
  }
  [[nodiscard]] std::span<const double> back() const { return state(size() - 1); }

  void reserve(std::size_t n) {
    times_.reserve(n);
    data_.reserve(n * dim_);
  }
  void push_back(double t, std::span<const double> y);
  void mark_escaped() { escaped_ = true; }

 private:
  std::size_t dim_ = 0;
  double h_ = 0.0;
  bool escaped_ = false;
  std::vector<double> times_;
  std::vector<double> data_;
};

/// Throws InputError / DomainError when the problem is ill-formed.
void validate(const FractionalIVP& ivp);

/// Number of steps N with t_N = N h <= t_end.
[[nodiscard]] std::size_t step_count(const FractionalIVP& ivp);

/// Fractional Adams-Bashforth-Moulton predictor-corrector (one PECE pass per step,
/// full memory). Escape is reported through Trajectory::escaped(), not thrown.
/// Throws InputError if the rhs is non-finite at the initial state.
[[nodiscard]] Trajectory abm_solve(const FractionalIVP& ivp, const SolverOptions& options = {});

/// Recomputes y_n from the stored prefix y_0 .. y_{n-1} of `trajectory` using the
/// same arithmetic as abm_solve. Requires 1 <= n < trajectory.size().
[[nodiscard]] State recompute_step(const FractionalIVP& ivp, const Trajectory& trajectory,
                                   std::size_t n);

/// Predictor weight b_{j,n+1}(alpha) for the given step size.
[[nodiscard]] double predictor_weight(double alpha, double h, std::size_t j, std::size_t n);

/// Corrector weight a_{j,n+1}(alpha) without the h^alpha / Gamma(alpha+2) prefactor.
[[nodiscard]] double corrector_weight(double alpha, std::size_t j, std::size_t n);

}  // namespace flv
