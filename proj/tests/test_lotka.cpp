#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "flv/errors.hpp"
#include "flv/lotka.hpp"

using flv::RationalOrder;
using flv::Verdict;
using namespace flv::lotka;

namespace {

// Fixture table from canonical cells to the 1..9 labels of the nine-region figure
// for a < 0, b < 0, c > 0: numbered row by row from the top-left cell.
int figure_label(Region r) { return (2 - r.j) * 3 + r.i + 1; }

double max_residual(const Params& p, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const auto& q : pts) worst = std::max(worst, std::abs(separatrix_residual(p, q)));
  return worst;
}

}  // namespace

TEST_CASE("right-hand side and equilibria") {
  const Params p{1, -1, 1};
  const auto f = rhs(p, {2.0, 3.0});
  CHECK(f[0] == 2.0 * (1.0 + 3.0));
  CHECK(f[1] == 3.0 * (-1.0 - 2.0));
  const auto eq = equilibria(p);
  CHECK(eq[0] == Point{0, 0});
  CHECK(eq[1] == Point{-1, -1});
  CHECK_THROWS_AS((void)equilibria(Params{1, 0, 1}), flv::DomainError);
}

TEST_CASE("rhs vanishes at both equilibria for random parameters") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    const Params p{u(rng), u(rng), u(rng)};
    for (const auto& e : equilibria(p)) {
      const auto f = rhs(p, e);
      // Rounding in c/b and a/b scales with the size of the products.
      const double scale = (1.0 + std::abs(e[0])) * (1.0 + std::abs(e[1])) * (1.0 + std::abs(p.b));
      CHECK(std::abs(f[0]) < 1e-14 * scale * (1.0 + std::abs(p.a)));
      CHECK(std::abs(f[1]) < 1e-14 * scale * (1.0 + std::abs(p.c)));
    }
  }
}

TEST_CASE("Jacobian at the equilibria") {
  const Params p{1, -1, 1};
  Eigen::Matrix2d j0;
  j0 << 1, 0, 0, -1;
  CHECK(jacobian(p, {0, 0}) == j0);
  Eigen::Matrix2d j1;
  j1 << 0, -1, 1, 0;
  CHECK(jacobian(p, {-1, -1}) == j1);
}

TEST_CASE("analytic Jacobian matches central differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    const Params p{u(rng), u(rng), u(rng)};
    const Point y{u(rng), u(rng)};
    const Eigen::Matrix2d an = jacobian(p, y);
    const double h = 1e-6;
    for (int col = 0; col < 2; ++col) {
      Point lo = y, hi = y;
      lo[static_cast<std::size_t>(col)] -= h;
      hi[static_cast<std::size_t>(col)] += h;
      const auto fl = rhs(p, lo), fh = rhs(p, hi);
      for (int row = 0; row < 2; ++row) {
        const auto r = static_cast<std::size_t>(row);
        CHECK(std::abs((fh[r] - fl[r]) / (2 * h) - an(row, col)) < 1e-5);
      }
    }
  }
}

TEST_CASE("order case classification") {
  CHECK(classify_orders({{}, {1, 2}, {9, 10}}) == OrderCase::Fractional);
  CHECK(classify_orders({{}, {1, 1}, {1, 1}}) == OrderCase::Fractional);
  CHECK(classify_orders({{}, {3, 2}, {5, 4}}) == OrderCase::Lifted);
  CHECK(classify_orders({{}, {1, 2}, {3, 2}}) == OrderCase::Mixed);
  CHECK_THROWS_AS(validate(System{{}, {2, 1}, {1, 2}}), flv::DomainError);
}

TEST_CASE("closed-form verdicts") {
  SUBCASE("a < 0, c > 0 at order 1/2") {
    const auto v = closed_form_stability({{-1, -1, 1}, {1, 2}, {1, 2}});
    CHECK(v.verdicts[0] == Verdict::Stable);
    CHECK(v.verdicts[1] == Verdict::Unstable);
  }
  SUBCASE("a = c = 1 at orders 0.9, 0.8") {
    const auto v = closed_form_stability({{1, -1, 1}, {9, 10}, {4, 5}});
    CHECK(v.verdicts[0] == Verdict::Unstable);
    CHECK(v.verdicts[1] == Verdict::Stable);
  }
  SUBCASE("orders in (1, 2) are unstable everywhere") {
    const auto v = closed_form_stability({{-1, -1, 1}, {3, 2}, {3, 2}});
    CHECK(v.order_case == OrderCase::Lifted);
    CHECK(v.verdicts[0] == Verdict::Unstable);
    CHECK(v.verdicts[1] == Verdict::Unstable);
  }
  SUBCASE("classical center is marginal") {
    const auto v = closed_form_stability({{1, -1, 1}, {1, 1}, {1, 1}});
    CHECK(v.verdicts[1] == Verdict::Marginal);
  }
  SUBCASE("mixed orders are unsupported") {
    CHECK_THROWS_AS((void)closed_form_stability({{1, -1, 1}, {1, 2}, {3, 2}}), flv::UnsupportedCase);
    CHECK_THROWS_AS((void)numeric_stability({{1, -1, 1}, {1, 2}, {3, 2}}, 0), flv::UnsupportedCase);
  }
}

TEST_CASE("closed form agrees with the numeric pipeline on the full sweep") {
  const double coeffs[] = {-2, -1, -0.5, 0.5, 1, 2};
  const RationalOrder orders[] = {{3, 10}, {1, 2}, {9, 10}, {5, 4}, {3, 2}, {7, 4}};
  int cases = 0, agree = 0;
  for (double a : coeffs)
    for (double c : coeffs)
      for (double b : {-1.0, 1.0})
        for (const auto& al : orders)
          for (const auto& be : orders) {
            const System s{{a, b, c}, al, be};
            if (classify_orders(s) == OrderCase::Mixed) continue;
            const auto cf = closed_form_stability(s);
            for (std::size_t k = 0; k < 2; ++k) {
              ++cases;
              const Verdict num = numeric_stability(s, k).verdict;
              if (num == cf.verdicts[k] && num != Verdict::Marginal) ++agree;
            }
          }
  CHECK(cases == 6 * 6 * 2 * 18 * 2);
  CHECK(agree == cases);
}

TEST_CASE("verdicts do not depend on b") {
  for (double b : {-3.0, -0.25, 0.25, 3.0}) {
    const auto base = closed_form_stability({{-1, -1, 1}, {1, 2}, {3, 10}});
    const System s{{-1, b, 1}, {1, 2}, {3, 10}};
    CHECK(closed_form_stability(s).verdicts == base.verdicts);
    CHECK(numeric_stability(s, 0).verdict == base.verdicts[0]);
    CHECK(numeric_stability(s, 1).verdict == base.verdicts[1]);
  }
}

TEST_CASE("lifting orders in (1, 2)") {
  const System s{{1, -1, 1}, {5, 4}, {3, 2}};
  const auto l = lift(s);
  CHECK(l.alpha1 == RationalOrder{1, 4});
  CHECK(l.beta1 == RationalOrder{1, 2});
  CHECK(l.orders()[2] == RationalOrder{1, 1});
  CHECK(l.orders()[3] == RationalOrder{1, 1});
  for (const auto& e : l.equilibria()) {
    const auto f = l.rhs(e);
    for (double v : f) CHECK(v == 0.0);
  }
  CHECK(l.equilibria()[1] == std::array<double, 4>{0, 0, -1, -1});
  CHECK_THROWS_AS((void)lift({{1, -1, 1}, {1, 2}, {3, 2}}), flv::DomainError);
  CHECK_THROWS_AS((void)lift({{1, -1, 1}, {1, 1}, {3, 2}}), flv::DomainError);
}

TEST_CASE("lifted rhs rewrites the second-order system") {
  const LiftedSystem l{{1, -1, 1}, {1, 2}, {1, 2}};
  const std::array<double, 4> st{0.3, -0.2, 2.0, 3.0};
  const auto f = l.rhs(st);
  const auto planar = rhs(l.params, {2.0, 3.0});
  CHECK(f[0] == planar[0]);
  CHECK(f[1] == planar[1]);
  CHECK(f[2] == 0.3);
  CHECK(f[3] == -0.2);
}

TEST_CASE("lifted analysis has a double root at one") {
  const System s{{1, -1, 1}, {3, 2}, {3, 2}};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto r = numeric_stability(s, k);
    CHECK(r.verdict == Verdict::Unstable);
    // (lambda^M - 1)^2 divides the polynomial: it and its derivative vanish at 1.
    CHECK(std::abs(r.polynomial(1.0)) < 1e-12);
    CHECK(std::abs(r.polynomial.derivative()(1.0)) < 1e-12);
    const auto near_one = std::count_if(r.roots.begin(), r.roots.end(), [](const flv::RootInfo& x) {
      return std::abs(x.value - flv::Complex(1.0, 0.0)) < 1e-8;
    });
    CHECK(near_one >= 2);
  }
}

TEST_CASE("separatrix residual") {
  const Params p{-1, -1, 1};
  CHECK(separatrix_residual(p, {-1, 1}) == doctest::Approx(0.0));
  CHECK(separatrix_residual(p, {-1, 2}) == doctest::Approx(-0.132120558828557678).epsilon(1e-14));
  // Fractional exponent on a negative base.
  CHECK_THROWS_AS((void)separatrix_residual({-0.5, -1, 1}, {1, -2}), flv::DomainError);
  CHECK(std::isfinite(separatrix_residual({2, 1, -3}, {-0.7, -1.3})));
}

TEST_CASE("separatrix trace") {
  const Params p{-1, -1, 1};
  SeparatrixOptions opt;
  opt.budget = 0.2;
  opt.step = 0.002;
  const auto tr = separatrix_trace(p, opt);
  const auto line = tr.polyline();
  CHECK(line.size() >= 200);
  CHECK_FALSE(tr.truncated);
  CHECK(max_residual(p, line) <= 1e-6);
  REQUIRE_FALSE(tr.forward.empty());
  CHECK(std::hypot(tr.forward.front()[0] + 1, tr.forward.front()[1] - 1) <= kSeparatrixOffset * (1 + 1e-9));

  SUBCASE("long trace inside a window keeps the residual bound") {
    SeparatrixOptions w;
    w.window = Box{-4, 4, -4, 4};
    const auto t = separatrix_trace(p, w);
    CHECK(t.polyline().size() > 1000);
    CHECK(max_residual(p, t.polyline()) <= 1e-6);
    for (const auto& q : t.polyline()) CHECK(w.window->contains(q));
  }
  SUBCASE("flipping the direction swaps the branches") {
    SeparatrixOptions f = opt;
    f.flip_direction = true;
    const auto t = separatrix_trace(p, f);
    CHECK(t.forward == tr.backward);
    CHECK(t.backward == tr.forward);
  }
  SUBCASE("zero budget yields the saddle") {
    SeparatrixOptions z;
    z.budget = 0.0;
    const auto line0 = separatrix_trace(p, z).polyline();
    REQUIRE(line0.size() == 1);
    CHECK(line0[0] == Point{-1, 1});
  }
  SUBCASE("no saddle") {
    CHECK_THROWS_AS((void)separatrix_trace({1, -1, 1}), flv::DomainError);
  }
}

TEST_CASE("isocline regions") {
  const Params p{-1, -1, 1};
  CHECK(isocline_region(p, {-10, -10}) == Region{0, 0});
  CHECK(isocline_region(p, {10, 10}) == Region{2, 2});
  CHECK(isocline_region(p, {-0.5, 0.5}) == Region{1, 1});
  // Boundary points take the lower index; equilibria sit on cell corners.
  CHECK(isocline_region(p, {0, 0}) == Region{1, 0});
  CHECK(isocline_region(p, {-1, 1}) == Region{0, 1});

  std::map<int, Region> cells;
  for (double y1 : {-2.0, -0.5, 2.0})
    for (double y2 : {-2.0, 0.5, 2.0}) {
      const Region r = isocline_region(p, {y1, y2});
      cells[figure_label(r)] = r;
    }
  CHECK(cells.size() == 9);
  CHECK(cells.at(1) == Region{0, 2});
  CHECK(cells.at(9) == Region{2, 0});
}

TEST_CASE("fixture labels match the flow directions of the invariant cells") {
  // Cells 5, 6, 8 and 9 should be closed under the flow: on each bounding
  // nullcline segment the field never points outward.
  const Params p{-1, -1, 1};
  for (int label : {5, 6, 8, 9}) {
    const int j = 2 - (label - 1) / 3;
    const int i = (label - 1) % 3;
    const double y1lo[] = {-5, -1, 0}, y1hi[] = {-1, 0, 5};
    const double y2lo[] = {-5, 0, 1}, y2hi[] = {0, 1, 5};
    CAPTURE(label);
    for (int k = 1; k < 20; ++k) {
      const double s = k / 20.0;
      const double x = y1lo[i] + s * (y1hi[i] - y1lo[i]);
      const double y = y2lo[j] + s * (y2hi[j] - y2lo[j]);
      // Left/right edges (lines in y1) and bottom/top edges (lines in y2).
      if (i > 0) CHECK(rhs(p, {y1lo[i], y})[0] >= 0.0);
      if (i < 2) CHECK(rhs(p, {y1hi[i], y})[0] <= 0.0);
      if (j > 0) CHECK(rhs(p, {x, y2lo[j]})[1] >= 0.0);
      if (j < 2) CHECK(rhs(p, {x, y2hi[j]})[1] <= 0.0);
    }
  }
}

TEST_CASE("initial-value problems") {
  const System s{{1, -1, 1}, {9, 10}, {4, 5}};
  const auto ivp = make_ivp(s, {-0.5, -0.5}, 1.0, 0.1);
  CHECK(ivp.orders == std::vector<double>{0.9, 0.8});
  std::vector<double> dy(2);
  ivp.rhs(0.0, ivp.y0, dy);
  CHECK(dy[0] == -0.5 * (1.0 - 0.5));
  CHECK_THROWS_AS((void)make_ivp({{1, -1, 1}, {3, 2}, {3, 2}}, {0, 0}, 1, 0.1), flv::DomainError);
  const auto lifted = make_lifted_ivp(lift({{1, -1, 1}, {3, 2}, {5, 4}}), {-0.5, -0.5}, {0.1, 0.2}, 1.0, 0.1);
  CHECK(lifted.orders == std::vector<double>{0.5, 0.25, 1.0, 1.0});
  CHECK(lifted.y0 == std::vector<double>{0.1, 0.2, -0.5, -0.5});
}
