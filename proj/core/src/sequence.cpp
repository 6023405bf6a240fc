#include "qpt/sequence.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace qpt::instances {

void IntegerSequence::validate() const {
  require(min_value <= 1, "sequence: min_value must be 0 or 1");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i] >= min_value && values[i] <= r,
            "sequence: value " + std::to_string(values[i]) + " at index " +
                std::to_string(i) + " outside [" + std::to_string(min_value) +
                ", " + std::to_string(r) + "]");
  }
}

namespace {

std::map<std::uint64_t, std::size_t> occurrences(const IntegerSequence& s,
                                                 bool ignore_zero) {
  std::map<std::uint64_t, std::size_t> counts;
  for (auto v : s.values) {
    if (ignore_zero && v == 0) continue;
    ++counts[v];
  }
  return counts;
}

}  // namespace

std::size_t max_occurrence(const IntegerSequence& s, bool ignore_zero) {
  std::size_t best = 0;
  for (auto [value, count] : occurrences(s, ignore_zero)) best = std::max(best, count);
  return best;
}

bool has_k_collision(const IntegerSequence& s, std::size_t k, bool ignore_zero) {
  return max_occurrence(s, ignore_zero) >= k;
}

std::vector<std::uint64_t> k_collision_values(const IntegerSequence& s,
                                              std::size_t k, bool ignore_zero) {
  std::vector<std::uint64_t> out;
  for (auto [value, count] : occurrences(s, ignore_zero)) {
    if (count >= k) out.push_back(value);
  }
  return out;
}

std::size_t collision_distance(const IntegerSequence& s, std::size_t k) {
  require(k >= 2, "collision_distance: k >= 2");
  require(s.r * (k - 1) >= s.n(),
          "collision_distance: no k-collision-free sequence of this length");
  // Every value above k-1 occurrences must shed the excess; the spare
  // capacity r*(k-1) >= n guarantees the moved entries fit elsewhere.
  std::size_t moves = 0;
  for (auto [value, count] : occurrences(s, false)) {
    if (count >= k) moves += count - (k - 1);
  }
  return moves;
}

void write_text(std::ostream& out, const IntegerSequence& s) {
  out << s.n() << ' ' << s.r << '\n';
  for (auto v : s.values) out << v << '\n';
}

IntegerSequence read_text(std::istream& in, std::uint64_t min_value) {
  long long n = -1;
  long long r = -1;
  if (!(in >> n >> r) || n < 0 || r < 0) {
    throw InputError("sequence text: header must be 'n r'");
  }
  IntegerSequence s;
  s.r = static_cast<std::uint64_t>(r);
  s.min_value = min_value;
  s.values.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    long long v;
    if (!(in >> v)) throw InputError("sequence text: expected " + std::to_string(n) + " values");
    if (v < 0) throw InputError("sequence text: negative value");
    s.values.push_back(static_cast<std::uint64_t>(v));
  }
  s.validate();
  return s;
}

nlohmann::json to_json(const IntegerSequence& s) {
  return {{"n", s.n()}, {"r", s.r}, {"min_value", s.min_value}, {"values", s.values}};
}

IntegerSequence sequence_from_json(const nlohmann::json& j) {
  try {
    IntegerSequence s;
    s.r = j.at("r").get<std::uint64_t>();
    s.min_value = j.value("min_value", std::uint64_t{1});
    s.values = j.at("values").get<std::vector<std::uint64_t>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != s.values.size()) {
      throw InputError("sequence json: n does not match values length");
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("sequence json: ") + e.what());
  }
}

}  // namespace qpt::instances
