#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "flv/errors.hpp"
#include "flv/polynomial.hpp"

using flv::Complex;
using flv::Polynomial;

namespace {

// lambda^d + c0
Polynomial binomial(std::size_t d, double c0) {
  std::vector<double> c(d + 1, 0.0);
  c[0] = c0;
  c[d] = 1.0;
  return Polynomial(c);
}

void check_residuals(const Polynomial& p, const std::vector<Complex>& roots) {
  REQUIRE(roots.size() == p.degree());
  for (const Complex& z : roots) {
    CAPTURE(z);
    CHECK(flv::normalized_residual(p, z) <= 1e-8);
  }
}

// Every expected root is matched by a distinct computed root within tol.
bool same_multiset(std::vector<Complex> got, const std::vector<Complex>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (const Complex& w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](const Complex& a, const Complex& b) {
      return std::abs(a - w) < std::abs(b - w);
    });
    if (std::abs(*it - w) > tol) return false;
    got.erase(it);
  }
  return true;
}

}  // namespace

TEST_CASE("arithmetic and evaluation") {
  const Polynomial p({1.0, 2.0, 1.0});  // (x + 1)^2
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == 9.0);
  CHECK(p.derivative().coeffs() == std::vector<double>{2.0, 2.0});
  const Polynomial q = Polynomial({1.0, 1.0}) * Polynomial({1.0, 1.0});
  CHECK(q.coeffs() == p.coeffs());
  CHECK((p - p).is_zero());
  CHECK(Polynomial({0.0, 0.0}).is_zero());
}

TEST_CASE("quadratic with real roots") {
  const Polynomial p({-1.0, 0.0, 1.0});
  const auto roots = flv::polynomial_roots(p);
  check_residuals(p, roots);
  CHECK(same_multiset(roots, {Complex(1, 0), Complex(-1, 0)}, 1e-12));
}

TEST_CASE("roots of lambda^17 + 1 lie on the unit circle at odd multiples of pi/17") {
  const Polynomial p = binomial(17, 1.0);
  const auto roots = flv::polynomial_roots(p);
  check_residuals(p, roots);
  std::vector<Complex> want;
  for (int h = 0; h < 17; ++h) want.push_back(std::polar(1.0, (2 * h + 1) * std::numbers::pi / 17));
  CHECK(same_multiset(roots, want, 1e-10));
}

TEST_CASE("roots of lambda^9 + 1") {
  const Polynomial p = binomial(9, 1.0);
  const auto roots = flv::polynomial_roots(p);
  check_residuals(p, roots);
  std::vector<Complex> want;
  for (int h = 0; h < 9; ++h) want.push_back(std::polar(1.0, (2 * h + 1) * std::numbers::pi / 9));
  CHECK(same_multiset(roots, want, 1e-10));
}

TEST_CASE("repeated roots are resolved to full precision") {
  // (x - 1)^2 (x + 2)
  const Polynomial p = Polynomial({-1.0, 1.0}) * Polynomial({-1.0, 1.0}) * Polynomial({2.0, 1.0});
  const auto roots = flv::polynomial_roots(p);
  check_residuals(p, roots);
  CHECK(same_multiset(roots, {Complex(1, 0), Complex(1, 0), Complex(-2, 0)}, 1e-12));

  // (x^4 - 1)^2 has four double roots.
  const Polynomial q = binomial(4, -1.0) * binomial(4, -1.0);
  const auto rq = flv::polynomial_roots(q);
  check_residuals(q, rq);
  CHECK(same_multiset(rq,
                      {Complex(1, 0), Complex(1, 0), Complex(-1, 0), Complex(-1, 0), Complex(0, 1),
                       Complex(0, 1), Complex(0, -1), Complex(0, -1)},
                      1e-10));
}

TEST_CASE("zero roots are split off exactly") {
  const Polynomial p({0.0, 0.0, -4.0, 0.0, 1.0});  // x^2 (x^2 - 4)
  const auto roots = flv::polynomial_roots(p);
  check_residuals(p, roots);
  CHECK(same_multiset(roots, {Complex(0, 0), Complex(0, 0), Complex(2, 0), Complex(-2, 0)}, 1e-12));
}

TEST_CASE("random products of known factors") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial p({1.0});
    std::vector<Complex> want;
    for (int k = 0; k < 4; ++k) {
      const Complex z(u(rng), u(rng));
      p = p * Polynomial({std::norm(z), -2.0 * z.real(), 1.0});
      want.push_back(z);
      want.push_back(std::conj(z));
    }
    const auto roots = flv::polynomial_roots(p);
    check_residuals(p, roots);
    CHECK(same_multiset(roots, want, 1e-6));
  }
}

TEST_CASE("degree-zero and non-finite inputs are rejected") {
  CHECK_THROWS_AS((void)flv::polynomial_roots(Polynomial({3.0})), flv::InputError);
  CHECK_THROWS_AS((void)flv::polynomial_roots(Polynomial(std::vector<double>{})), flv::InputError);
  CHECK_THROWS_AS((void)flv::polynomial_roots(Polynomial({1.0, std::nan("")})), flv::InputError);
}
