#include <algorithm>
#include <map>

#include "qpt/lin2.hpp"

namespace qpt::lin2 {

namespace {

// Entries of y read so far, sorted; entry = 2 * row + bit.
using Transcript = std::vector<std::uint32_t>;

class Game {
 public:
  explicit Game(const Lin2System& a) : a_(a) {}

  Rational value(Transcript& t, std::size_t remaining) {
    auto it = memo_.find(t);
    if (it != memo_.end()) return it->second;
    Rational best = abs(p_yes(t) - p_no(t));
    if (remaining > 0) {
      for (std::uint32_t row = 0; row < a_.rows.size(); ++row) {
        if (std::any_of(t.begin(), t.end(), [&](std::uint32_t e) { return e / 2 == row; }))
          continue;
        Rational split = 0;
        for (std::uint32_t bit = 0; bit < 2; ++bit) {
          Transcript child = t;
          child.insert(std::upper_bound(child.begin(), child.end(), 2 * row + bit), 2 * row + bit);
          split += value(child, remaining - 1);
        }
        if (split > best) best = split;
      }
    }
    memo_.emplace(t, best);
    return best;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  // Pr over uniform z that A z agrees with the transcript: 2^-rank when the
  // observed rows are consistent, else 0.
  Rational p_yes(const Transcript& t) const {
    GF2Matrix aug(t.size(), a_.n + 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (auto v : a_.rows[t[i] / 2]) aug.set(i, v, true);
      aug.set(i, a_.n, (t[i] & 1U) != 0);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a_.n && rank < aug.rows(); ++c) {
      std::size_t pivot = rank;
      while (pivot < aug.rows() && !aug.get(pivot, c)) ++pivot;
      if (pivot == aug.rows()) continue;
      aug.swap_rows(rank, pivot);
      for (std::size_t r = 0; r < aug.rows(); ++r)
        if (r != rank && aug.get(r, c)) aug.add_row(r, rank);
      ++rank;
    }
    for (std::size_t r = rank; r < aug.rows(); ++r)
      if (aug.get(r, a_.n)) return 0;
    Rational p(1);
    mpq_div_2exp(p.get_mpq_t(), p.get_mpq_t(), static_cast<mp_bitcnt_t>(rank));
    return p;
  }

  static Rational p_no(const Transcript& t) {
    Rational p(1);
    mpq_div_2exp(p.get_mpq_t(), p.get_mpq_t(), static_cast<mp_bitcnt_t>(t.size()));
    return p;
  }

  const Lin2System& a_;
  std::map<Transcript, Rational> memo_;
};

}  // namespace

GameResult distinguishing_advantage(const Lin2System& a, std::size_t q) {
  a.validate();
  require(q <= a.rows.size(), "distinguishing_advantage: q exceeds the number of rows");
  Game game(a);
  Transcript empty;
  GameResult out;
  // value() is the summed |P_yes - P_no| over the leaves of the best tree,
  // i.e. twice the best acceptance gap.
  out.advantage = game.value(empty, q) / 2;
  out.queries = q;
  out.states = game.states();
  return out;
}

}  // namespace qpt::lin2
