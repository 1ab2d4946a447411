#include "dispgrid/guard.hpp"

#include <cstdlib>
#include <string_view>

namespace dispgrid {

EnumerationGuard EnumerationGuard::from_environment(std::uint64_t fallback) {
  const char* env = std::getenv("DISPGRID_GUARD");
  if (env == nullptr || *env == '\0') return {fallback};
  std::string_view value(env);
  if (value == "off" || value == "unlimited") return unlimited();
  try {
    return {std::stoull(std::string(value))};
  } catch (const std::exception&) {
    throw std::invalid_argument("DISPGRID_GUARD must be a non-negative integer or 'off', got '" +
                                std::string(value) + "'");
  }
}

GuardExceeded::GuardExceeded(const std::string& what, std::uint64_t requested, std::uint64_t limit)
    : std::runtime_error(what + ": " + std::to_string(requested) + " exceeds enumeration limit " +
                         std::to_string(limit)),
      requested_(requested),
      limit_(limit) {}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  return out;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    out = saturating_mul(out, base);
    if (out == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return out;
}

void check_guard(const EnumerationGuard& guard, std::uint64_t count, const std::string& what) {
  if (!guard.allows(count)) throw GuardExceeded(what, count, guard.limit);
}

}  // namespace dispgrid
