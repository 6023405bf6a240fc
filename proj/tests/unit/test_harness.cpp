#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qpt/harness.hpp"

using namespace qpt;
using namespace qpt::harness;

namespace {

std::vector<std::pair<double, double>> power_law(double a, double e, std::initializer_list<double> ns) {
  std::vector<std::pair<double, double>> pts;
  for (double n : ns) pts.emplace_back(n, a * std::pow(n, e));
  return pts;
}

ExperimentConfig small_scaling() {
  ExperimentConfig c;
  c.k = 2;
  c.n_grid = {64, 128, 256, 512};
  c.trials = 4;
  c.seed = 9;
  c.threads = 2;
  return c;
}

}  // namespace

TEST(Fit, ExactPowerLaws) {
  auto linear = fit_exponent(power_law(1.0, 1.0, {16, 64, 256, 1024}));
  EXPECT_NEAR(linear.slope, 1.0, 1e-12);
  EXPECT_NEAR(linear.intercept, 0.0, 1e-9);
  auto cube = fit_exponent(power_law(7.0, 1.0 / 3.0, {1e3, 1e4, 1e5, 1e6, 1e7}));
  EXPECT_NEAR(cube.slope, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(cube.r2, 1.0, 1e-12);
  EXPECT_NEAR(std::exp(cube.intercept), 7.0, 1e-9);
  EXPECT_EQ(cube.points, 5u);
}

TEST(Fit, NoisyPowerLawWithinInterval) {
  Rng rng(4);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<std::pair<double, double>> pts;
  for (double n = 1024; n <= 65536; n *= 2) pts.emplace_back(n, 3.0 * std::pow(n, 0.43) * std::exp(noise(rng)));
  auto f = fit_exponent(pts);
  EXPECT_NEAR(f.slope, 0.43, 0.03);
  EXPECT_LE(f.ci_low, f.slope);
  EXPECT_GE(f.ci_high, f.slope);
  EXPECT_GT(f.slope_stderr, 0.0);
}

TEST(Fit, RejectsBadInput) {
  EXPECT_THROW(fit_exponent(power_law(1, 1, {2, 4, 8})), InputError);
  auto pts = power_law(1, 1, {2, 4, 8, 16});
  pts[1].second = 0;
  EXPECT_THROW(fit_exponent(pts), InputError);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_grid = {1024, 512, 2048, 4096};
  EXPECT_THROW(c.validate(), InputError);
  c.n_grid = {1024, 2048, 4096};
  EXPECT_THROW(c.validate(), InputError);
  EXPECT_EQ(parse_problem(to_string(Problem::Lin2Game)), Problem::Lin2Game);
  EXPECT_EQ(parse_instance_kind("far"), InstanceKind::Far);
  EXPECT_THROW(parse_tester_kind("psychic"), InputError);
}

TEST(Targets, Exponents) {
  EXPECT_DOUBLE_EQ(target_exponent(TesterKind::Quantum, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(target_exponent(TesterKind::Quantum, 3), 3.0 / 7.0);
  EXPECT_DOUBLE_EQ(target_exponent(TesterKind::Classical, 3), 2.0 / 3.0);
}

TEST(Scaling, DeterministicAcrossThreadCounts) {
  auto c = small_scaling();
  auto a = run_scaling(c);
  c.threads = 1;
  auto b = run_scaling(c);
  EXPECT_EQ(scaling_csv(a), scaling_csv(b));
  EXPECT_EQ(scaling_summary(a).dump(), scaling_summary(b).dump());
  EXPECT_EQ(a.trials.size(), 16u);
  for (const auto& p : a.points) {
    EXPECT_FALSE(p.error);
    EXPECT_EQ(p.rejects, 0u);
  }
  ASSERT_TRUE(a.fit);
}

TEST(Scaling, InfeasiblePointRecordsError) {
  auto c = small_scaling();
  c.instance = InstanceKind::Far;
  c.eps = Rational(9, 10);  // 2 eps n copies cannot fit
  auto r = run_scaling(c);
  for (const auto& p : r.points) EXPECT_TRUE(p.error);
  EXPECT_FALSE(r.fit);
  EXPECT_TRUE(r.fit_error);
}

TEST(Scaling, SummarySchema) {
  auto r = run_scaling(small_scaling());
  auto s = scaling_summary(r);
  EXPECT_TRUE(validate_summary_schema(s).empty());
  auto broken = s;
  broken.erase("points");
  EXPECT_FALSE(validate_summary_schema(broken).empty());
  broken = s;
  broken["k"] = "two";
  EXPECT_FALSE(validate_summary_schema(broken).empty());
  auto csv = scaling_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')).find("n,trial"), 0u);
}

TEST(Scaling, CollisionProblem) {
  auto c = small_scaling();
  c.problem = Problem::Collision;
  auto r = run_scaling(c);
  for (const auto& p : r.points) {
    EXPECT_FALSE(p.error) << *p.error;
    EXPECT_EQ(p.rejects, 0u);
  }
}

TEST(Reports, Lin2GameStructure) {
  ExperimentConfig c;
  c.problem = Problem::Lin2Game;
  c.lin2.seeds = 5;
  auto r = run_lin2_game(c);
  auto j = r.to_json();
  ASSERT_TRUE(j.contains("checks"));
  EXPECT_EQ(j["checks"].size(), r.checks.size());
  for (const auto& check : j["checks"]) {
    EXPECT_TRUE(check.contains("name"));
    EXPECT_TRUE(check["passed"].is_boolean());
  }
  EXPECT_TRUE(r.all_passed());
}

TEST(Reports, CouplingGrid) {
  EXPECT_EQ(coupling_factor(2), 80u);
  EXPECT_EQ(coupling_factor(3), 294u);
  EXPECT_EQ(default_gamma(2), Rational(1, 2 * 4 * 80));
  EXPECT_FALSE(coupled_grid(3).empty());
}
