#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace qpt {

using Vertex = std::uint32_t;
using Rng = std::mt19937_64;

/// Raised for every caller-side contract violation (bad ranges, infeasible
/// generator parameters, malformed input files).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by interfaces that are declared but intentionally have no backing
/// construction in this library.
class NotImplemented : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// SplitMix64 finalizer. Used to derive independent per-trial seeds from a
/// base seed so that results do not depend on scheduling order.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return mix_seed(mix_seed(mix_seed(base) ^ a) ^ b);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace qpt
