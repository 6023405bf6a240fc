#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "qpt/harness.hpp"

namespace qpt::harness {

FitResult fit_exponent(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 4, "fit_exponent: need at least 4 points");
  const double count = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [n, q] : points) {
    require(n > 0 && q > 0 && std::isfinite(n) && std::isfinite(q),
            "fit_exponent: coordinates must be positive and finite");
    mx += std::log(n);
    my += std::log(q);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [n, q] : points) {
    const double dx = std::log(n) - mx, dy = std::log(q) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  require(sxx > 0, "fit_exponent: n values must not all coincide");

  FitResult f;
  f.points = points.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double sse = std::max(0.0, syy - f.slope * sxy);
  f.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  const double dof = count - 2.0;
  f.slope_stderr = std::sqrt(sse / dof / sxx);
  boost::math::students_t dist(dof);
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.ci_low = f.slope - t * f.slope_stderr;
  f.ci_high = f.slope + t * f.slope_stderr;
  return f;
}

nlohmann::json to_json(const FitResult& f) {
  return {{"slope", f.slope},         {"intercept", f.intercept},
          {"r2", f.r2},               {"slope_stderr", f.slope_stderr},
          {"ci95", {f.ci_low, f.ci_high}}, {"points", f.points}};
}

}  // namespace qpt::harness
