#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "flv/errors.hpp"
#include "flv/rational.hpp"

using flv::RationalOrder;

TEST_CASE("decimal orders recover their fraction") {
  CHECK(flv::reduce_order(0.9) == RationalOrder{9, 10});
  CHECK(flv::reduce_order(1.0) == RationalOrder{1, 1});
  CHECK(flv::reduce_order(0.8) == RationalOrder{4, 5});
  CHECK(flv::reduce_order(0.3) == RationalOrder{3, 10});
  CHECK(flv::reduce_order(1.75) == RationalOrder{7, 4});
  CHECK(flv::reduce_order(1.0 / 3.0) == RationalOrder{1, 3});
  CHECK(flv::reduce_order(0.001) == RationalOrder{1, 1000});
}

TEST_CASE("integer pairs are reduced by their gcd") {
  CHECK(flv::reduce_order(6, 8) == RationalOrder{3, 4});
  CHECK(flv::reduce_order(10, 10) == RationalOrder{1, 1});
  CHECK_THROWS_AS((void)flv::reduce_order(0, 3), flv::DomainError);
  CHECK_THROWS_AS((void)flv::reduce_order(3, -4), flv::DomainError);
}

TEST_CASE("every fraction with denominator <= 1000 round-trips through its decimal") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t u = den(rng);
    std::uniform_int_distribution<std::int64_t> num(1, 2 * u - 1);
    const std::int64_t v = num(rng);
    const RationalOrder want = flv::reduce_order(v, u);
    CHECK(flv::reduce_order(static_cast<double>(v) / static_cast<double>(u)) == want);
  }
}

TEST_CASE("decimal orders out of range or too fine are rejected") {
  CHECK_THROWS_AS((void)flv::reduce_order(0.0), flv::DomainError);
  CHECK_THROWS_AS((void)flv::reduce_order(-0.5), flv::DomainError);
  CHECK_THROWS_AS((void)flv::reduce_order(std::numeric_limits<double>::infinity()), flv::DomainError);
  CHECK_THROWS_AS((void)flv::reduce_order(0.123456789), flv::PrecisionError);
  CHECK_THROWS_AS((void)flv::reduce_order(1.0 / 1009.0), flv::PrecisionError);
}

TEST_CASE("order strings") {
  CHECK(flv::parse_order("9/10") == RationalOrder{9, 10});
  CHECK(flv::parse_order(" 6 / 8 ") == RationalOrder{3, 4});
  CHECK(flv::parse_order("0.5") == RationalOrder{1, 2});
  CHECK(flv::parse_order("1") == RationalOrder{1, 1});
  CHECK_THROWS_AS((void)flv::parse_order("abc"), flv::InputError);
  CHECK_THROWS_AS((void)flv::parse_order("1/x"), flv::InputError);
  CHECK_THROWS_AS((void)flv::parse_order(""), flv::InputError);
}

TEST_CASE("common multiple of denominators") {
  const std::vector<RationalOrder> a{{9, 10}, {4, 5}};
  CHECK(flv::common_multiple(a) == 10);
  const std::vector<RationalOrder> b{{1, 1}, {1, 1}};
  CHECK(flv::common_multiple(b) == 1);
  const std::vector<RationalOrder> c{{1, 2}, {1, 3}};
  CHECK(flv::common_multiple(c) == 6);
  CHECK_THROWS_AS((void)flv::common_multiple(std::vector<RationalOrder>{}), flv::InputError);
}

TEST_CASE("common multiple is divisible by every denominator and minimal") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::int64_t> den(1, 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<RationalOrder> orders;
    for (int k = 0; k < 3; ++k) orders.push_back(flv::reduce_order(1, den(rng)));
    const std::int64_t m = flv::common_multiple(orders);
    for (const auto& o : orders) CHECK(m % o.den == 0);
    // Brute force: no smaller positive multiple works.
    for (std::int64_t k = 1; k < m; ++k) {
      bool all = true;
      for (const auto& o : orders) all = all && (k % o.den == 0);
      if (all) {
        FAIL("smaller common multiple " << k);
      }
    }
  }
}
