#include "flv/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "flv/errors.hpp"

namespace flv {

namespace {

// Lanczos coefficients (Godfrey), g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

double lanczos(double x) {
  // Gamma(x) for x >= 0.5.
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    sum += kLanczos[k] / (z + static_cast<double>(k));
  }
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma: argument must be positive and finite");
  }
  if (x < 0.5) {
    // Reflection keeps the series in its accurate range.
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

double caputo_power_derivative(double p, double alpha, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("caputo_power_derivative: order must lie in (0, 1]");
  }
  const bool classical_linear = (p == 1.0 && alpha == 1.0);
  if (!(p > alpha) && !classical_linear) {
    throw DomainError("caputo_power_derivative: requires p > alpha");
  }
  if (!(t >= 0.0)) {
    throw DomainError("caputo_power_derivative: t must be non-negative");
  }
  return gamma(p + 1.0) / gamma(p - alpha + 1.0) * std::pow(t, p - alpha);
}

}  // namespace flv
