#include "flv/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "flv/errors.hpp"

namespace flv {

std::string RationalOrder::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

RationalOrder reduce_order(std::int64_t p, std::int64_t q) {
  if (p <= 0 || q <= 0) {
    throw DomainError("reduce_order: numerator and denominator must be positive");
  }
  const std::int64_t g = std::gcd(p, q);
  return {p / g, q / g};
}

RationalOrder reduce_order(double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError("reduce_order: order must be positive and finite");
  }
  // Convergents h_k / k_k of the continued fraction of value.
  std::int64_t h_prev = 0, h_curr = 1;
  std::int64_t k_prev = 1, k_curr = 0;
  std::int64_t best_h = 0, best_k = 1;
  double x = value;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(x);
    if (a_real > 1e15) {
      break;
    }
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h_next = a * h_curr + h_prev;
    const std::int64_t k_next = a * k_curr + k_prev;
    if (k_next > kMaxOrderDenominator) {
      break;
    }
    h_prev = h_curr;
    h_curr = h_next;
    k_prev = k_curr;
    k_curr = k_next;
    best_h = h_curr;
    best_k = k_curr;
    const double frac = x - a_real;
    if (frac < 1e-12 || std::abs(value - static_cast<double>(best_h) / static_cast<double>(best_k)) <
                            1e-15 * value) {
      break;
    }
    x = 1.0 / frac;
  }
  if (best_h <= 0 ||
      std::abs(value - static_cast<double>(best_h) / static_cast<double>(best_k)) > 1e-9) {
    throw PrecisionError("reduce_order: no fraction with denominator <= " +
                         std::to_string(kMaxOrderDenominator) + " within 1e-9 of " +
                         std::to_string(value));
  }
  return reduce_order(best_h, best_k);
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InputError("invalid order '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

RationalOrder parse_order(std::string_view text) {
  const std::string_view t = trim(text);
  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    return reduce_order(parse_int(trim(t.substr(0, slash)), text),
                        parse_int(trim(t.substr(slash + 1)), text));
  }
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc() || ptr != end) {
    throw InputError("invalid order '" + std::string(text) + "'");
  }
  return reduce_order(v);
}

std::int64_t common_multiple(std::span<const RationalOrder> orders) {
  if (orders.empty()) {
    throw InputError("common_multiple: empty order list");
  }
  std::int64_t m = 1;
  for (const auto& o : orders) {
    m = std::lcm(m, o.den);
  }
  return m;
}

}  // namespace flv
