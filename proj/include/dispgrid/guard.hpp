#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dispgrid {

/// Upper limit on the number of items an enumeration may materialize or scan.
struct EnumerationGuard {
  static constexpr std::uint64_t kDefaultLimit = 100'000'000;
  static constexpr std::uint64_t kOutcomeLimit = 10'000'000;

  std::uint64_t limit = kDefaultLimit;

  static EnumerationGuard unlimited() { return {std::numeric_limits<std::uint64_t>::max()}; }

  /// Default limit, overridden by the DISPGRID_GUARD environment variable
  /// ("off" or "unlimited" disables the guard).
  static EnumerationGuard from_environment(std::uint64_t fallback = kDefaultLimit);

  bool allows(std::uint64_t count) const { return count <= limit; }
};

class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, std::uint64_t requested, std::uint64_t limit);

  std::uint64_t requested() const { return requested_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

// Saturating arithmetic for size estimates.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

void check_guard(const EnumerationGuard& guard, std::uint64_t count, const std::string& what);

}  // namespace dispgrid
