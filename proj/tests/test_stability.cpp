#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "flv/errors.hpp"
#include "flv/lotka.hpp"
#include "flv/stability.hpp"

using flv::Complex;
using flv::RationalOrder;
using flv::Verdict;

namespace {

flv::EquilibriumModel lotka_model(const flv::lotka::Params& p, bool analytic) {
  flv::EquilibriumModel m;
  m.rhs = [p](std::span<const double> y) {
    const auto f = flv::lotka::rhs(p, {y[0], y[1]});
    return std::vector<double>{f[0], f[1]};
  };
  if (analytic) {
    m.jacobian = [p](std::span<const double> y) -> Eigen::MatrixXd {
      return flv::lotka::jacobian(p, {y[0], y[1]});
    };
  }
  return m;
}

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("characteristic polynomial of small systems") {
  SUBCASE("(lambda + 1)^2") {
    const auto p = flv::make_sector_problem(mat2(-1, 0, 0, -1), {{1, 1}, {1, 1}});
    CHECK(p.multiple == 1);
    CHECK(flv::characteristic_polynomial(p).coeffs() == std::vector<double>{1.0, 2.0, 1.0});
  }
  SUBCASE("diagonal Jacobian factors as (lambda^u - a)(lambda^v + c)") {
    // a = -1, c = 1, orders 9/10 and 4/5 give exponents (9, 8).
    const auto p = flv::make_sector_problem(mat2(-1, 0, 0, -1), {{9, 10}, {4, 5}});
    CHECK(p.multiple == 10);
    CHECK(p.exponents() == std::vector<std::int64_t>{9, 8});
    std::vector<double> want(18, 0.0);
    want[0] = want[8] = want[9] = want[17] = 1.0;
    CHECK(flv::characteristic_polynomial(p).coeffs() == want);
  }
  SUBCASE("anti-diagonal Jacobian gives lambda^(u+v) + a c") {
    const auto p = flv::make_sector_problem(mat2(0, -1, 1, 0), {{9, 10}, {4, 5}});
    std::vector<double> want(18, 0.0);
    want[0] = want[17] = 1.0;
    CHECK(flv::characteristic_polynomial(p).coeffs() == want);
  }
}

TEST_CASE("cofactor expansion matches the eigen-polynomial for integer orders") {
  // With all orders 1 the determinant is the ordinary characteristic polynomial,
  // whose roots are the eigenvalues of J.
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {2, 3, 4, 6}) {
    Eigen::MatrixXd j(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) j(r, c) = u(rng);
    const auto problem =
        flv::make_sector_problem(j, std::vector<RationalOrder>(static_cast<std::size_t>(n), {1, 1}));
    const auto poly = flv::characteristic_polynomial(problem);
    const Eigen::VectorXcd eig = j.eigenvalues();
    for (int k = 0; k < n; ++k) {
      CAPTURE(n);
      CHECK(std::abs(poly(Complex(eig(k)))) < 1e-9);
    }
  }
}

TEST_CASE("degree equals the sum of exponents") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<std::int64_t> den(1, 12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    std::vector<RationalOrder> orders;
    for (int k = 0; k < n; ++k) {
      const std::int64_t d = den(rng);
      std::uniform_int_distribution<std::int64_t> num(1, d);
      orders.push_back(flv::reduce_order(num(rng), d));
    }
    Eigen::MatrixXd j(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) j(r, c) = u(rng);
    const auto problem = flv::make_sector_problem(j, orders);
    std::int64_t sum = 0;
    for (auto e : problem.exponents()) sum += e;
    const auto poly = flv::characteristic_polynomial(problem);
    CHECK(static_cast<std::int64_t>(poly.degree()) == sum);
    CHECK(poly.leading() == 1.0);
  }
}

TEST_CASE("roots of a diagonal system match the analytic root sets") {
  // lambda^u = a and lambda^v = -c, for a few sign patterns.
  struct Case {
    double a, c;
    RationalOrder alpha, beta;
  };
  const Case cases[] = {{-1.0, 1.0, {9, 10}, {4, 5}},
                        {-2.0, 0.5, {1, 2}, {1, 3}},
                        {1.5, 2.0, {3, 10}, {9, 10}},
                        {-0.5, -1.0, {1, 2}, {1, 2}}};
  for (const auto& cs : cases) {
    const auto problem = flv::make_sector_problem(mat2(cs.a, 0, 0, -cs.c), {cs.alpha, cs.beta});
    const auto e = problem.exponents();
    std::vector<Complex> want;
    auto add_roots = [&](std::int64_t d, double rhs) {
      const double r = std::pow(std::abs(rhs), 1.0 / static_cast<double>(d));
      const double phase = rhs < 0 ? std::numbers::pi : 0.0;
      for (std::int64_t h = 0; h < d; ++h)
        want.push_back(std::polar(r, (phase + 2.0 * std::numbers::pi * static_cast<double>(h)) /
                                         static_cast<double>(d)));
    };
    add_roots(e[0], cs.a);
    add_roots(e[1], -cs.c);
    auto got = flv::polynomial_roots(flv::characteristic_polynomial(problem));
    REQUIRE(got.size() == want.size());
    for (const Complex& w : want) {
      auto it = std::min_element(got.begin(), got.end(), [&](const Complex& x, const Complex& y) {
        return std::abs(x - w) < std::abs(y - w);
      });
      CHECK(std::abs(*it - w) < 1e-7);
      got.erase(it);
    }
  }
}

TEST_CASE("sector classification") {
  SUBCASE("negative real roots are stable for M = 1") {
    const std::vector<Complex> roots{{-1, 0}, {-1, 0}};
    const auto r = flv::classify_sector(roots, 1);
    CHECK(r.verdict == Verdict::Stable);
    CHECK(r.witness.abs_arg == doctest::Approx(std::numbers::pi));
    CHECK(r.sector_half_angle == doctest::Approx(std::numbers::pi / 2));
  }
  SUBCASE("roots of lambda^17 + 1 with M = 10") {
    std::vector<Complex> roots;
    for (int h = 0; h < 17; ++h) roots.push_back(std::polar(1.0, (2 * h + 1) * std::numbers::pi / 17));
    const auto r = flv::classify_sector(roots, 10);
    CHECK(r.verdict == Verdict::Stable);
    CHECK(r.witness.abs_arg == doctest::Approx(std::numbers::pi / 17));
  }
  SUBCASE("a root at one is unstable for any M") {
    for (std::int64_t m : {1, 4, 10, 1000}) {
      const std::vector<Complex> roots{{-3, 1}, {1, 0}};
      CHECK(flv::classify_sector(roots, m).verdict == Verdict::Unstable);
    }
  }
  SUBCASE("roots on the sector boundary are marginal") {
    const std::vector<Complex> roots{{0, 1}, {0, -1}};
    CHECK(flv::classify_sector(roots, 1).verdict == Verdict::Marginal);
    const std::vector<Complex> near{std::polar(1.0, std::numbers::pi / 2 + 1e-10)};
    CHECK(flv::classify_sector(near, 1).verdict == Verdict::Marginal);
    const std::vector<Complex> outside{std::polar(1.0, std::numbers::pi / 2 + 1e-6)};
    CHECK(flv::classify_sector(outside, 1).verdict == Verdict::Stable);
  }
  SUBCASE("empty root list") {
    CHECK_THROWS_AS((void)flv::classify_sector(std::vector<Complex>{}, 1), flv::InputError);
  }
}

TEST_CASE("equilibrium analysis of the Lotka-Volterra field") {
  const RationalOrder half{1, 2};
  SUBCASE("origin with a < 0, c > 0") {
    const flv::lotka::Params p{-1, -1, 1};
    const std::vector<double> pt{0, 0};
    const auto r = flv::analyze_equilibrium(lotka_model(p, false), pt, std::vector{half, half});
    CHECK(r.verdict == Verdict::Stable);
  }
  SUBCASE("interior point with a c > 0") {
    const flv::lotka::Params p{1, -1, 1};
    const std::vector<double> pt{-1, -1};
    const auto r = flv::analyze_equilibrium(lotka_model(p, false), pt,
                                            std::vector<RationalOrder>{{9, 10}, {4, 5}});
    CHECK(r.verdict == Verdict::Stable);
    CHECK(r.multiple == 10);
    CHECK(r.witness.abs_arg == doctest::Approx(std::numbers::pi / 17).epsilon(1e-9));
  }
  SUBCASE("interior point with a c < 0") {
    const flv::lotka::Params p{-1, -1, 1};
    const std::vector<double> pt{-1, 1};
    const auto r = flv::analyze_equilibrium(lotka_model(p, true), pt, std::vector{half, half});
    CHECK(r.verdict == Verdict::Unstable);
  }
  SUBCASE("non-equilibrium points are refused") {
    const flv::lotka::Params p{-1, -1, 1};
    const std::vector<double> pt{0.5, 0.5};
    CHECK_THROWS_AS((void)flv::analyze_equilibrium(lotka_model(p, true), pt, std::vector{half, half}),
                    flv::PreconditionError);
  }
  SUBCASE("orders above one are refused") {
    const flv::lotka::Params p{-1, -1, 1};
    const std::vector<double> pt{0, 0};
    CHECK_THROWS_AS((void)flv::analyze_equilibrium(lotka_model(p, true), pt,
                                                   std::vector<RationalOrder>{{3, 2}, {1, 2}}),
                    flv::DomainError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS((void)flv::make_sector_problem(mat2(1, 0, 0, 1), {{1, 2}}), flv::InputError);
  }
}

TEST_CASE("finite-difference Jacobian agrees with the analytic Lotka Jacobian") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    flv::lotka::Params p{u(rng), u(rng), u(rng)};
    if (p.b == 0.0) continue;
    const std::vector<double> pt{u(rng), u(rng)};
    const auto model = lotka_model(p, false);
    const Eigen::MatrixXd fd = flv::finite_difference_jacobian(model.rhs, pt);
    const Eigen::Matrix2d an = flv::lotka::jacobian(p, {pt[0], pt[1]});
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(std::abs(fd(r, c) - an(r, c)) < 1e-5);
  }
}

TEST_CASE("verdicts do not depend on the common-denominator representation") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const RationalOrder orders[] = {{3, 10}, {1, 2}, {9, 10}, {1, 3}, {2, 3}};
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::MatrixXd j = mat2(u(rng), u(rng), u(rng), u(rng));
    const RationalOrder a = orders[trial % 5];
    const RationalOrder b = orders[(trial / 5) % 5];
    const auto base = flv::analyze_sector_problem(flv::make_sector_problem(j, {a, b}));
    for (std::int64_t k : {2, 3}) {
      const auto scaled = flv::analyze_sector_problem(flv::make_sector_problem(j, {a, b}, k));
      CAPTURE(trial);
      CAPTURE(k);
      if (base.verdict != Verdict::Marginal) {
        CHECK(scaled.verdict == base.verdict);
      }
      // Roots map to their k-th roots and the sector shrinks by k.
      CHECK(scaled.witness.abs_arg * static_cast<double>(k) ==
            doctest::Approx(base.witness.abs_arg).epsilon(1e-6));
    }
  }
}
