#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dyadic_bellman/errors.hpp"

namespace dyadic_bellman {

/// Integer power with overflow detection; throws CapacityError on overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent);

/// Exact nonnegative rational numerator / base^exponent, kept reduced
/// (numerator not divisible by base unless exponent == 0).
class MAdicRational {
 public:
  MAdicRational() = default;
  /// Throws DomainError for base < 2, CapacityError if base^exponent overflows.
  MAdicRational(std::uint64_t numerator, unsigned exponent, unsigned base);

  /// Parses "j/d" (d must be a power of `base` after reduction) or a decimal
  /// that is exactly j/base^k for some k <= 40. Throws RepresentationError
  /// when no finite base-m expansion exists, DomainError on syntax errors.
  static MAdicRational parse(std::string_view text, unsigned base);

  std::uint64_t numerator() const noexcept { return numerator_; }
  unsigned exponent() const noexcept { return exponent_; }
  unsigned base() const noexcept { return base_; }
  std::uint64_t denominator() const { return checked_pow(base_, exponent_); }
  double value() const;

  std::string to_string() const;

  MAdicRational operator+(const MAdicRational& other) const;
  MAdicRational operator*(const MAdicRational& other) const;
  friend bool operator==(const MAdicRational&, const MAdicRational&) = default;

 private:
  void reduce();

  std::uint64_t numerator_ = 0;
  unsigned exponent_ = 0;
  unsigned base_ = 2;
};

}  // namespace dyadic_bellman
