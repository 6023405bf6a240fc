#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpt/rational.hpp"
#include "qpt/testers.hpp"

namespace qpt::harness {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;  // natural log scale: q ~ e^intercept * n^slope
  double r2 = 0.0;
  double slope_stderr = 0.0;
  double ci_low = 0.0;   // 95% two-sided, Student t with points - 2 dof
  double ci_high = 0.0;
  std::size_t points = 0;
};

/// Least squares of log q on log n. Needs >= 4 points, all coordinates > 0.
FitResult fit_exponent(std::span<const std::pair<double, double>> points);
nlohmann::json to_json(const FitResult& f);

enum class Problem { HFreeness, Collision, DualpolyCert, Lin2Game };
enum class InstanceKind { Free, Far };
enum class TesterKind { Quantum, Classical };

const char* to_string(Problem p);
const char* to_string(InstanceKind k);
const char* to_string(TesterKind t);
Problem parse_problem(const std::string& s);
InstanceKind parse_instance_kind(const std::string& s);
TesterKind parse_tester_kind(const std::string& s);

struct Lin2GameConfig {
  std::size_t n = 10;            // hard-matrix size for uniformity and the game
  std::size_t c = 1;
  Rational delta{3, 5};
  std::size_t no_n = 12;         // no-instance farness check
  std::size_t no_c = 40;
  Rational alpha{1, 10};         // no-instances should be (1/2 - alpha)-far
  std::size_t seeds = 50;
  std::size_t max_attempts = 2000;
};

struct ExperimentConfig {
  Problem problem = Problem::HFreeness;
  std::size_t k = 2;
  Rational eps{1, 20};
  /// Certification only; 0 selects 1 / (2 * 4^(k-1) * ceil(20 (2k)^(k/2))).
  Rational gamma{0};
  std::vector<std::uint64_t> n_grid{1024, 2048, 4096, 8192, 16384};
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  std::size_t d_out = 1;
  InstanceKind instance = InstanceKind::Free;
  TesterKind tester = TesterKind::Quantum;
  testers::QuantumTesterConfig quantum;
  double classical_constant = 5.0;
  /// 0 means std::thread::hardware_concurrency().
  std::size_t threads = 0;
  Lin2GameConfig lin2;
  /// Empty: nothing is written.
  std::filesystem::path output_dir;

  void validate() const;
};

/// Output directory override read by the CLI.
inline constexpr const char* kOutputDirEnv = "QPT_OUTPUT_DIR";

struct TrialRecord {
  std::uint64_t n = 0;
  std::size_t trial = 0;
  testers::Verdict verdict = testers::Verdict::Accept;
  std::uint64_t q_classical = 0;
  std::uint64_t q_charged = 0;
  std::uint64_t seed = 0;
};

struct PointSummary {
  std::uint64_t n = 0;
  std::size_t trials = 0;
  double mean_queries = 0.0;  // classical + Grover-charged
  double stddev_queries = 0.0;
  double mean_charged = 0.0;
  std::size_t rejects = 0;
  double reject_rate = 0.0;
  std::optional<std::string> error;
};

struct ScalingResult {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;  // sorted by (n, trial)
  std::vector<PointSummary> points;
  std::optional<FitResult> fit;
  std::optional<std::string> fit_error;
  double target_exponent = 0.0;
};

/// Exponent the tester is expected to show: (1/2)(1 - 1/(2^k - 1)) for the
/// quantum tester, 1 - 1/k for the classical baseline.
double target_exponent(TesterKind tester, std::size_t k);

ScalingResult run_scaling(const ExperimentConfig& config);
std::string scaling_csv(const ScalingResult& r);
nlohmann::json scaling_summary(const ScalingResult& r);
/// Empty iff `summary` has every field of the scaling summary schema with
/// the right type.
std::vector<std::string> validate_summary_schema(const nlohmann::json& summary);
/// Writes scaling.csv and summary.json; throws if the summary fails its schema.
void write_scaling(const ScalingResult& r, const std::filesystem::path& dir);

struct CertCheck {
  std::string name;
  bool passed = false;
  /// Informational checks are reported but do not affect the verdict.
  bool asserted = true;
  nlohmann::json detail;
};

struct CertificationReport {
  std::vector<CertCheck> checks;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Coupled block count N = ceil(20 (2k)^(k/2)) * R.
std::size_t coupling_factor(std::size_t k);
Rational default_gamma(std::size_t k);
/// R values of the coupled grid certified for k.
std::vector<std::size_t> coupled_grid(std::size_t k);

/// Exact dual-polynomial suite: psi invariants over N in 8..64 and k in
/// {2, 3}, measured vs exhaustive phd for N <= 12, both block identities at
/// N = 3, R = 2, l1 of the composition, correlation against the closed-form
/// bound and the 9/10 threshold on the coupled grid, and the phd growth fit.
CertificationReport run_certification(const ExperimentConfig& config);

struct Lin2GameReport {
  std::vector<CertCheck> checks;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

Lin2GameReport run_lin2_game(const ExperimentConfig& config);

/// Writes `j` with 2-space indent and a trailing newline.
void write_json(const nlohmann::json& j, const std::filesystem::path& file);

}  // namespace qpt::harness
