#pragma once

#include <cstdint>
#include <random>

namespace dispgrid {

/// Recorded in output metadata so runs can be reproduced.
inline constexpr const char* kGeneratorDescription =
    "mt19937_64; bounded ints by multiply-shift rejection; seeds derived by splitmix64";

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for task `index` of a run with the given master seed:
/// splitmix64(splitmix64(master) + index). Independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Exactly uniform on [0, bound) for bound >= 1.
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound);

}  // namespace dispgrid
