#include "dyadic_bellman/madic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace dyadic_bellman {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t narrow(u128 v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    throw CapacityError("m-adic rational overflows 64-bit numerator");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) {
  u128 acc = 1;
  for (unsigned i = 0; i < exponent; ++i) acc = narrow(acc * base);
  return static_cast<std::uint64_t>(acc);
}

MAdicRational::MAdicRational(std::uint64_t numerator, unsigned exponent, unsigned base)
    : numerator_(numerator), exponent_(exponent), base_(base) {
  if (base < 2) throw DomainError("m-adic base must be >= 2");
  (void)checked_pow(base_, exponent_);
  reduce();
}

void MAdicRational::reduce() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && numerator_ % base_ == 0) {
    numerator_ /= base_;
    --exponent_;
  }
}

double MAdicRational::value() const {
  return static_cast<double>(numerator_) / static_cast<double>(denominator());
}

std::string MAdicRational::to_string() const {
  if (exponent_ == 0) return std::to_string(numerator_);
  return std::to_string(numerator_) + "/" + std::to_string(denominator());
}

MAdicRational MAdicRational::operator+(const MAdicRational& other) const {
  if (base_ != other.base_) throw DomainError("m-adic rationals with different bases");
  const unsigned e = std::max(exponent_, other.exponent_);
  const u128 a = static_cast<u128>(numerator_) * checked_pow(base_, e - exponent_);
  const u128 b = static_cast<u128>(other.numerator_) * checked_pow(base_, e - other.exponent_);
  return MAdicRational(narrow(a + b), e, base_);
}

MAdicRational MAdicRational::operator*(const MAdicRational& other) const {
  if (base_ != other.base_) throw DomainError("m-adic rationals with different bases");
  const u128 n = static_cast<u128>(numerator_) * other.numerator_;
  return MAdicRational(narrow(n), exponent_ + other.exponent_, base_);
}

MAdicRational MAdicRational::parse(std::string_view text, unsigned base) {
  if (base < 2) throw DomainError("m-adic base must be >= 2");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::uint64_t num = parse_u64(text.substr(0, slash));
    std::uint64_t den = parse_u64(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    unsigned k = 0;
    while (den % base == 0) {
      den /= base;
      ++k;
    }
    if (den != 1) {
      throw RepresentationError(std::string(text) + " has no finite base-" +
                                std::to_string(base) + " expansion");
    }
    return MAdicRational(num, k, base);
  }

  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError("not a nonnegative number: '" + std::string(text) + "'");
  }
  double den = 1.0;
  for (unsigned k = 0; k <= 40 && den <= 0x1p53; ++k, den *= base) {
    const double scaled = v * den;
    if (scaled == std::floor(scaled) && scaled < 0x1p63 && scaled / den == v) {
      return MAdicRational(static_cast<std::uint64_t>(scaled), k, base);
    }
  }
  throw RepresentationError(std::string(text) + " has no short base-" + std::to_string(base) +
                            " expansion; pass it as j/m^k");
}

}  // namespace dyadic_bellman
