#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qpt/lin2.hpp"

namespace qpt::lin2 {

void Lin2System::validate() const {
  require(n >= 3, "Lin2System: need at least 3 variables");
  require(rhs.size() == rows.size(), "Lin2System: rhs length differs from row count");
  std::vector<std::size_t> uses(n, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [i, j, l] = rows[r];
    require(i < n && j < n && l < n, "Lin2System: variable index out of range");
    require(i != j && j != l && i != l, "Lin2System: row indices must be distinct");
    require(rhs[r] <= 1, "Lin2System: rhs entries must be bits");
    ++uses[i], ++uses[j], ++uses[l];
  }
  if (c > 0)
    for (auto u : uses) require(u <= 3 * c, "Lin2System: variable used more than 3c times");
}

GF2Matrix Lin2System::matrix() const {
  GF2Matrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto v : rows[r]) m.set(r, v, true);
  return m;
}

std::size_t Lin2System::unsatisfied(std::span<const std::uint8_t> x) const {
  require(x.size() == n, "Lin2System::unsatisfied: assignment length mismatch");
  std::size_t bad = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [i, j, l] = rows[r];
    if (((x[i] ^ x[j] ^ x[l]) & 1U) != rhs[r]) ++bad;
  }
  return bad;
}

void write_text(std::ostream& out, const Lin2System& s) {
  out << s.n << ' ' << s.c << '\n';
  for (std::size_t r = 0; r < s.rows.size(); ++r)
    out << s.rows[r][0] << ' ' << s.rows[r][1] << ' ' << s.rows[r][2] << ' '
        << static_cast<int>(s.rhs[r]) << '\n';
}

Lin2System read_text(std::istream& in) {
  Lin2System s;
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "Lin2System: missing header");
  {
    std::istringstream hs(line);
    require(static_cast<bool>(hs >> s.n >> s.c), "Lin2System: malformed header");
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long i, j, l, b;
    require(static_cast<bool>(ls >> i >> j >> l >> b), "Lin2System: malformed row: " + line);
    require(i >= 0 && j >= 0 && l >= 0 && (b == 0 || b == 1),
            "Lin2System: malformed row: " + line);
    s.rows.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                      static_cast<std::uint32_t>(l)});
    s.rhs.push_back(static_cast<std::uint8_t>(b));
  }
  s.validate();
  return s;
}

namespace {

bool row_ok(const std::vector<std::uint32_t>& stubs, std::size_t r) {
  return stubs[3 * r] != stubs[3 * r + 1] && stubs[3 * r] != stubs[3 * r + 2] &&
         stubs[3 * r + 1] != stubs[3 * r + 2];
}

std::optional<Lin2System> strict_sample(std::size_t n, std::size_t c, Rng& rng) {
  const std::size_t m = c * n;
  std::vector<std::uint32_t> stubs;
  stubs.reserve(3 * m);
  for (std::size_t v = 0; v < n; ++v) stubs.insert(stubs.end(), 3 * c, static_cast<std::uint32_t>(v));
  std::shuffle(stubs.begin(), stubs.end(), rng);

  // Repair rows with a repeated index by stub swaps that keep both rows valid.
  std::uniform_int_distribution<std::size_t> any_stub(0, stubs.size() - 1);
  const std::size_t budget = 200 * m + 1000;
  std::size_t spent = 0;
  for (std::size_t r = 0; r < m; ++r) {
    while (!row_ok(stubs, r)) {
      if (++spent > budget) return std::nullopt;
      const std::size_t a = 3 * r + (stubs[3 * r] == stubs[3 * r + 1] ? 1 : 2);
      const std::size_t b = any_stub(rng);
      const std::size_t rb = b / 3;
      if (rb == r) continue;
      std::swap(stubs[a], stubs[b]);
      if (!row_ok(stubs, rb) && rb < r) std::swap(stubs[a], stubs[b]);
    }
  }
  Lin2System s;
  s.n = n;
  s.c = c;
  s.rows.resize(m);
  s.rhs.assign(m, 0);
  for (std::size_t r = 0; r < m; ++r) s.rows[r] = {stubs[3 * r], stubs[3 * r + 1], stubs[3 * r + 2]};
  return s;
}

std::optional<Lin2System> relaxed_sample(std::size_t n, std::size_t c, Rng& rng) {
  const std::size_t m = c * n;
  std::vector<std::size_t> left(n, 3 * c);
  Lin2System s;
  s.n = n;
  s.c = c;
  s.rhs.assign(m, 0);
  std::vector<std::uint32_t> open;
  for (std::size_t r = 0; r < m; ++r) {
    open.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (left[v] > 0) open.push_back(static_cast<std::uint32_t>(v));
    if (open.size() < 3) return std::nullopt;
    for (std::size_t i = 0; i < 3; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, open.size() - 1);
      std::swap(open[i], open[pick(rng)]);
    }
    s.rows.push_back({open[0], open[1], open[2]});
    for (std::size_t i = 0; i < 3; ++i) --left[open[i]];
  }
  return s;
}

}  // namespace

std::optional<Lin2System> random_3sparse_system(std::size_t n, std::size_t c, Rng& rng,
                                                bool strict) {
  require(n >= 3, "random_3sparse_system: need n >= 3");
  require(c >= 1, "random_3sparse_system: need c >= 1");
  auto s = strict ? strict_sample(n, c, rng) : relaxed_sample(n, c, rng);
  if (s) s->validate();
  return s;
}

HardMatrixResult search_hard_matrix(std::size_t n, std::size_t c, const Rational& delta,
                                    std::uint64_t seed, std::size_t max_attempts,
                                    bool strict) {
  require(delta > 0 && delta <= 1, "search_hard_matrix: delta must lie in (0, 1]");
  const BigInt scaled = BigInt(delta.get_num() * n) / delta.get_den();
  HardMatrixResult out;
  out.subset_size = static_cast<std::size_t>(scaled.get_ui());
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    ++out.attempts;
    Rng rng(derive_seed(seed, attempt));
    auto sys = random_3sparse_system(n, c, rng, strict);
    if (!sys) continue;
    auto check = check_subset_independence(sys->matrix(), out.subset_size,
                                           derive_seed(seed, attempt, 1));
    if (check.all_independent) {
      out.found = true;
      out.exhaustive = check.exhaustive;
      out.system = std::move(*sys);
      return out;
    }
  }
  return out;
}

YesInstance sample_yes(const Lin2System& a, std::uint64_t seed) {
  a.validate();
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  YesInstance out;
  out.z.resize(a.n);
  for (auto& b : out.z) b = coin(rng) ? 1 : 0;
  out.system = a;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    const auto& [i, j, l] = a.rows[r];
    out.system.rhs[r] = out.z[i] ^ out.z[j] ^ out.z[l];
  }
  return out;
}

Lin2System sample_no(const Lin2System& a, std::uint64_t seed) {
  a.validate();
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  Lin2System out = a;
  for (auto& b : out.rhs) b = coin(rng) ? 1 : 0;
  return out;
}

Rational min_unsat_fraction(const Lin2System& s) {
  s.validate();
  require(s.n <= 24,
          "min_unsat_fraction: n > 24 is beyond exhaustive search; use "
          "sampled_unsat_upper_bound");
  require(!s.rows.empty(), "min_unsat_fraction: system has no rows");
  const std::size_t words = (s.rows.size() + 63) / 64;
  // Bit r of col[v] is set when variable v occurs in row r; flipping v
  // toggles exactly those rows.
  std::vector<std::uint64_t> col(s.n * words, 0), unsat(words, 0);
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    for (auto v : s.rows[r]) col[v * words + r / 64] ^= std::uint64_t{1} << (r % 64);
    if (s.rhs[r]) unsat[r / 64] |= std::uint64_t{1} << (r % 64);
  }
  auto count = [&] {
    std::size_t t = 0;
    for (auto w : unsat) t += static_cast<std::size_t>(std::popcount(w));
    return t;
  };
  std::size_t best = count();
  const std::uint64_t total = std::uint64_t{1} << s.n;
  for (std::uint64_t g = 1; g < total && best > 0; ++g) {
    const auto v = static_cast<std::size_t>(std::countr_zero(g));
    for (std::size_t i = 0; i < words; ++i) unsat[i] ^= col[v * words + i];
    best = std::min(best, count());
  }
  Rational f(static_cast<unsigned long>(best), static_cast<unsigned long>(s.rows.size()));
  f.canonicalize();
  return f;
}

Rational sampled_unsat_upper_bound(const Lin2System& s, std::size_t samples,
                                   std::uint64_t seed) {
  s.validate();
  require(samples > 0 && !s.rows.empty(), "sampled_unsat_upper_bound: empty input");
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> x(s.n);
  std::size_t best = s.rows.size();
  for (std::size_t t = 0; t < samples; ++t) {
    for (auto& b : x) b = coin(rng) ? 1 : 0;
    best = std::min(best, s.unsatisfied(x));
  }
  Rational f(static_cast<unsigned long>(best), static_cast<unsigned long>(s.rows.size()));
  f.canonicalize();
  return f;
}

void reduce_to_3coloring(const Lin2System&) {
  throw NotImplemented("not implemented: the 3-coloring gadget construction is external");
}

}  // namespace qpt::lin2
