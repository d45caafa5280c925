#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace flv {

/// Differentiation order v/u in lowest terms.
struct RationalOrder {
  std::int64_t num = 1;  // v
  std::int64_t den = 1;  // u

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  [[nodiscard]] std::string str() const;

  friend bool operator==(const RationalOrder&, const RationalOrder&) = default;
};

/// Largest denominator accepted when recovering a fraction from a decimal.
inline constexpr std::int64_t kMaxOrderDenominator = 1000;

/// Reduces p/q. Throws DomainError unless p > 0 and q > 0.
[[nodiscard]] RationalOrder reduce_order(std::int64_t p, std::int64_t q);

/// Nearest fraction with denominator <= 1000 via continued-fraction convergents.
/// Throws DomainError for non-positive or non-finite input, PrecisionError when no
/// such fraction lies within 1e-9.
[[nodiscard]] RationalOrder reduce_order(double value);

/// Accepts "v/u" or a decimal literal.
[[nodiscard]] RationalOrder parse_order(std::string_view text);

/// lcm of all denominators. Throws InputError on an empty list.
[[nodiscard]] std::int64_t common_multiple(std::span<const RationalOrder> orders);

}  // namespace flv
