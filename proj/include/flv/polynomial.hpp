#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace flv {

using Complex = std::complex<double>;

/// Dense real polynomial, coefficients in ascending powers: c[k] multiplies x^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  /// x^k
  static Polynomial monomial(std::size_t k, double coeff = 1.0);

  [[nodiscard]] const std::vector<double>& coeffs() const { return c_; }
  /// Degree after trimming exact zeros; the zero polynomial reports degree 0.
  [[nodiscard]] std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  [[nodiscard]] double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] Complex operator()(Complex x) const;
  [[nodiscard]] Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, Polynomial p);

 private:
  void trim();
  std::vector<double> c_;
};

/// |p(z)| / (1 + |z|^d), the scale-free residual used to accept roots.
[[nodiscard]] double normalized_residual(const Polynomial& p, Complex z);

/// All deg(p) complex roots, with multiplicity.
///
/// Companion-matrix eigenvalues give the initial estimates; each estimate is then
/// polished by Newton's method. Clusters of nearly coincident estimates are treated
/// as one root of multiplicity m: the cluster centroid is refined as a simple root
/// of the (m-1)-th derivative, which restores full precision for repeated roots such
/// as (x - 1)^2.
///
/// Throws InputError for a degree-0 polynomial or non-finite coefficients.
[[nodiscard]] std::vector<Complex> polynomial_roots(const Polynomial& p);

}  // namespace flv
