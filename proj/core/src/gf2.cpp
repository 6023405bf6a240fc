#include <algorithm>
#include <bit>
#include <numeric>

#include "qpt/lin2.hpp"

namespace qpt::lin2 {

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

GF2Matrix GF2Matrix::from_supports(std::size_t cols,
                                   const std::vector<std::vector<std::size_t>>& rows) {
  GF2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c : rows[r]) {
      require(c < cols, "GF2Matrix: column index out of range");
      m.set(r, c, !m.get(r, c));
    }
  return m;
}

bool GF2Matrix::get(std::size_t r, std::size_t c) const {
  return (data_[r * words_ + c / 64] >> (c % 64)) & 1U;
}

void GF2Matrix::set(std::size_t r, std::size_t c, bool value) {
  auto& w = data_[r * words_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  w = value ? (w | bit) : (w & ~bit);
}

std::span<const std::uint64_t> GF2Matrix::row(std::size_t r) const {
  return {data_.data() + r * words_, words_};
}

std::size_t GF2Matrix::row_weight(std::size_t r) const {
  std::size_t w = 0;
  for (auto word : row(r)) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

void GF2Matrix::add_row(std::size_t dst, std::size_t src) {
  for (std::size_t i = 0; i < words_; ++i) data_[dst * words_ + i] ^= data_[src * words_ + i];
}

void GF2Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * words_),
                   data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * words_),
                   data_.begin() + static_cast<std::ptrdiff_t>(b * words_));
}

GF2Matrix GF2Matrix::select_rows(std::span<const std::size_t> rows) const {
  GF2Matrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i] < rows_, "GF2Matrix::select_rows: row out of range");
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * words_), words_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * words_));
  }
  return out;
}

std::vector<std::uint8_t> GF2Matrix::multiply(std::span<const std::uint8_t> x) const {
  require(x.size() == cols_, "GF2Matrix::multiply: dimension mismatch");
  std::vector<std::uint64_t> packed(words_, 0);
  for (std::size_t c = 0; c < cols_; ++c)
    if (x[c] & 1U) packed[c / 64] |= std::uint64_t{1} << (c % 64);
  std::vector<std::uint8_t> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_; ++i) acc ^= data_[r * words_ + i] & packed[i];
    y[r] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
  }
  return y;
}

std::size_t gf2_rank(const GF2Matrix& input) {
  GF2Matrix m = input;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(rank, pivot);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.add_row(r, rank);
    ++rank;
  }
  return rank;
}

namespace {

// DFS over increasing row index sets of size <= s, carrying the running XOR.
// A zero partial sum means a dependent subset of size <= s.
class DependencySearch {
 public:
  DependencySearch(const GF2Matrix& m, std::size_t s) : m_(m), s_(s) {}

  bool found_dependency() {
    std::vector<std::uint64_t> acc(m_.words_per_row(), 0);
    return dfs(0, 0, acc);
  }
  std::uint64_t checked() const { return checked_; }

 private:
  bool dfs(std::size_t start, std::size_t depth, std::vector<std::uint64_t>& acc) {
    if (depth == s_) return false;
    for (std::size_t r = start; r < m_.rows(); ++r) {
      auto row = m_.row(r);
      bool zero = true;
      for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] ^= row[i];
        zero = zero && acc[i] == 0;
      }
      ++checked_;
      const bool dep = zero || dfs(r + 1, depth + 1, acc);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= row[i];
      if (dep) return true;
    }
    return false;
  }

  const GF2Matrix& m_;
  std::size_t s_;
  std::uint64_t checked_ = 0;
};

}  // namespace

SubsetIndependence check_subset_independence(const GF2Matrix& m, std::size_t s,
                                             std::uint64_t seed, std::size_t samples) {
  SubsetIndependence out;
  out.subset_size = s;
  if (s > m.rows()) {
    // No s-subset exists; fall back to the whole row set.
    s = m.rows();
  }
  if (s == 0) {
    out.all_independent = true;
    out.exhaustive = true;
    return out;
  }
  if (s > m.cols()) {
    // More than `cols` vectors in cols dimensions are always dependent.
    out.all_independent = false;
    out.exhaustive = true;
    return out;
  }
  if (s <= 14) {
    DependencySearch search(m, s);
    out.all_independent = !search.found_dependency();
    out.checked = search.checked();
    out.exhaustive = true;
    return out;
  }
  Rng rng(seed);
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  out.all_independent = true;
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t i = 0; i < s; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
      std::swap(idx[i], idx[pick(rng)]);
    }
    ++out.checked;
    if (gf2_rank(m.select_rows(std::span(idx.data(), s))) < s) {
      out.all_independent = false;
      break;
    }
  }
  return out;
}

}  // namespace qpt::lin2
