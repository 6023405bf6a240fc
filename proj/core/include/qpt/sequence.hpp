#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpt/common.hpp"

namespace qpt::instances {

/// s = (s_1..s_n) with values in [min_value, r]. min_value is 1 for plain
/// sequences and 0 for the dummy-augmented variant.
struct IntegerSequence {
  std::uint64_t r = 0;
  std::uint64_t min_value = 1;
  std::vector<std::uint64_t> values;

  std::size_t n() const noexcept { return values.size(); }
  /// Throws InputError when some value is outside [min_value, r].
  void validate() const;

  friend bool operator==(const IntegerSequence&, const IntegerSequence&) = default;
};

/// Largest number of occurrences of a single value, zeros ignored when
/// `ignore_zero` is set.
std::size_t max_occurrence(const IntegerSequence& s, bool ignore_zero = false);

/// True when some value occurs at least k times.
bool has_k_collision(const IntegerSequence& s, std::size_t k,
                     bool ignore_zero = false);

/// Values occurring at least k times, ascending.
std::vector<std::uint64_t> k_collision_values(const IntegerSequence& s,
                                              std::size_t k,
                                              bool ignore_zero = false);

/// Minimum number of entries to change so that no value occurs k times.
/// Requires r*(k-1) >= n so that a collision-free target exists.
std::size_t collision_distance(const IntegerSequence& s, std::size_t k);

// Text format: header "n r", then one value per line.
void write_text(std::ostream& out, const IntegerSequence& s);
IntegerSequence read_text(std::istream& in, std::uint64_t min_value = 1);

nlohmann::json to_json(const IntegerSequence& s);
IntegerSequence sequence_from_json(const nlohmann::json& j);

}  // namespace qpt::instances
