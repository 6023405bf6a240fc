#include "qpt/dualpoly.hpp"

#include "qpt/common.hpp"

namespace qpt::dualpoly {

SymmetricWeightFunction::SymmetricWeightFunction(std::size_t n,
                                                 std::vector<Rational> level_mass)
    : n_(n), mass_(std::move(level_mass)) {
  require(mass_.size() == n + 1, "level vector must have n + 1 entries");
  for (auto& q : mass_) q.canonicalize();
}

Rational SymmetricWeightFunction::point_value(std::size_t t) const {
  return level_mass(t) / Rational(binomial(n_, t));
}

Rational SymmetricWeightFunction::value(std::span<const int> x) const {
  require(x.size() == n_, "point dimension mismatch");
  std::size_t weight = 0;
  for (int xi : x) {
    require(xi == 1 || xi == -1, "points must have entries in {-1, 1}");
    weight += xi == -1;
  }
  return point_value(weight);
}

std::vector<std::size_t> SymmetricWeightFunction::support() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t <= n_; ++t) {
    if (mass_[t] != 0) out.push_back(t);
  }
  return out;
}

Rational SymmetricWeightFunction::l1() const {
  Rational s = 0;
  for (const auto& q : mass_) s += abs(q);
  return s;
}

Rational SymmetricWeightFunction::sum() const {
  Rational s = 0;
  for (const auto& q : mass_) s += q;
  return s;
}

Rational SymmetricWeightFunction::positive_mass() const {
  Rational s = 0;
  for (const auto& q : mass_) {
    if (q > 0) s += q;
  }
  return s;
}

Rational SymmetricWeightFunction::negative_mass() const {
  Rational s = 0;
  for (const auto& q : mass_) {
    if (q < 0) s -= q;
  }
  return s;
}

SymmetricWeightFunction SymmetricWeightFunction::scaled(const Rational& factor) const {
  std::vector<Rational> out = mass_;
  for (auto& q : out) q *= factor;
  return SymmetricWeightFunction(n_, std::move(out));
}

FalseMass false_mass(const SymmetricWeightFunction& psi, std::size_t k) {
  FalseMass out;
  for (std::size_t t = 0; t <= psi.n(); ++t) {
    const auto& w = psi.level_mass(t);
    if (t >= k && w > 0) out.mass_plus += w;
    if (t < k && w < 0) out.mass_minus -= w;
  }
  return out;
}

PointMassDual PointMassDual::standard(std::size_t r) {
  require(r >= 1, "R must be at least 1");
  PointMassDual phi;
  phi.r = r;
  return phi;
}

Rational PointMassDual::value(std::span<const int> z) const {
  require(z.size() == r, "point dimension mismatch");
  bool all_plus = true;
  bool all_minus = true;
  for (int zi : z) {
    require(zi == 1 || zi == -1, "points must have entries in {-1, 1}");
    all_plus = all_plus && zi == 1;
    all_minus = all_minus && zi == -1;
  }
  if (all_plus) return at_plus;
  if (all_minus) return at_minus;
  return 0;
}

Rational PointMassDual::l1() const { return abs(at_plus) + abs(at_minus); }
Rational PointMassDual::sum() const { return at_plus + at_minus; }

SymmetricWeightFunction PointMassDual::as_symmetric() const {
  std::vector<Rational> levels(r + 1);
  levels[0] = at_plus;
  levels[r] += at_minus;
  return SymmetricWeightFunction(r, std::move(levels));
}

}  // namespace qpt::dualpoly
