// qpt: scaling runs, certification, the lin2 game and instance generation.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qpt/graph_io.hpp"
#include "qpt/harness.hpp"
#include "qpt/instances.hpp"
#include "qpt/lin2.hpp"

namespace {

using namespace qpt;
using harness::ExperimentConfig;

struct RawOptions {
  std::string problem = "h-freeness";
  std::string eps = "1/20";
  std::string gamma = "0";
  std::string instance = "free";
  std::string tester = "quantum";
  std::string out;
  double exponent_tolerance = 0.05;
  std::string delta = "3/5";
  std::string alpha = "1/10";
};

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(harness::kOutputDirEnv); env && *env) return env;
  return {};
}

void add_common(CLI::App* app, ExperimentConfig& cfg, RawOptions& raw) {
  app->add_option("--k", cfg.k, "Number of source components (star leaves)");
  app->add_option("--seed", cfg.seed, "Base seed");
  app->add_option("--out", raw.out, "Output directory (else $QPT_OUTPUT_DIR; else none)");
  app->add_option("--threads", cfg.threads, "Worker threads, 0 = hardware");
}

void add_scaling(CLI::App* app, ExperimentConfig& cfg, RawOptions& raw) {
  app->add_option("--problem", raw.problem, "h-freeness | collision");
  app->add_option("--eps", raw.eps, "Distance parameter, p/q or decimal");
  app->add_option("--n-grid", cfg.n_grid, "Strictly increasing sizes")->delimiter(',');
  app->add_option("--trials", cfg.trials, "Trials per grid point");
  app->add_option("--d-out", cfg.d_out, "Out-degree bound");
  app->add_option("--instance", raw.instance, "free | far");
  app->add_option("--tester", raw.tester, "quantum | classical");
  app->add_option("--c-g", cfg.quantum.model.c_g, "Grover cost constant");
  app->add_option("--p-succ", cfg.quantum.model.p_succ, "Grover success probability");
  app->add_option("--repetitions", cfg.quantum.repetitions, "Grover calls per stage multiplier");
  app->add_option("--promise-fraction", cfg.quantum.promise_fraction,
                  "t0 fraction for the first Grover stage");
  app->add_option("--reference-eps", cfg.quantum.reference_eps,
                  "eps below which the tester enlarges its first stages");
  app->add_option("--charge-actual-bfs", cfg.quantum.charge_actual_bfs,
                  "Charge the observed BFS size instead of d_out^h");
  app->add_option("--classical-constant", cfg.classical_constant, "Classical sample constant");
  app->add_option("--exponent-tolerance", raw.exponent_tolerance,
                  "Allowed |slope - target| for the exit status");
}

int run_scale(ExperimentConfig cfg, const RawOptions& raw) {
  cfg.problem = harness::parse_problem(raw.problem);
  cfg.eps = parse_rational(raw.eps);
  cfg.instance = harness::parse_instance_kind(raw.instance);
  cfg.tester = harness::parse_tester_kind(raw.tester);
  const auto result = harness::run_scaling(cfg);
  auto summary = harness::scaling_summary(result);

  bool ok = result.fit.has_value();
  double slope = 0.0;
  if (result.fit) {
    slope = result.fit->slope;
    ok = std::abs(slope - result.target_exponent) <= raw.exponent_tolerance;
  }
  for (const auto& p : result.points) {
    if (p.error) ok = false;
    if (cfg.instance == harness::InstanceKind::Free && p.rejects > 0) ok = false;
    if (cfg.instance == harness::InstanceKind::Far && 3 * p.rejects < 2 * p.trials) ok = false;
  }
  summary["assertions_passed"] = ok;
  const auto dir = output_dir(raw.out);
  if (!dir.empty()) {
    harness::write_scaling(result, dir);
    harness::write_json(summary, dir / "summary.json");
  }
  std::cout << summary.dump(2) << '\n';
  return ok ? 0 : 1;
}

int run_certify(ExperimentConfig cfg, const RawOptions& raw) {
  cfg.problem = harness::Problem::DualpolyCert;
  cfg.gamma = parse_rational(raw.gamma);
  const auto report = harness::run_certification(cfg);
  const auto j = report.to_json();
  const auto dir = output_dir(raw.out);
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    harness::write_json(j, dir / "certification.json");
  }
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "PASS " : (c.asserted ? "FAIL " : "INFO ")) << c.name << '\n';
  return report.all_passed() ? 0 : 1;
}

int run_lin2(ExperimentConfig cfg, const RawOptions& raw) {
  cfg.problem = harness::Problem::Lin2Game;
  cfg.lin2.delta = parse_rational(raw.delta);
  cfg.lin2.alpha = parse_rational(raw.alpha);
  const auto report = harness::run_lin2_game(cfg);
  const auto j = report.to_json();
  const auto dir = output_dir(raw.out);
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    harness::write_json(j, dir / "lin2_game.json");
  }
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "PASS " : (c.asserted ? "FAIL " : "INFO ")) << c.name << '\n';
  return report.all_passed() ? 0 : 1;
}

struct GenOptions {
  std::string kind = "h-free";
  std::size_t n = 1024;
  std::size_t k = 2;
  std::size_t d_out = 1;
  std::uint64_t r = 0;
  std::size_t c = 1;
  std::string eps = "1/20";
  std::string delta = "3/5";
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
};

nlohmann::json lin2_json(const lin2::Lin2System& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.rows) rows.push_back({r[0], r[1], r[2]});
  return {{"n", s.n}, {"c", s.c}, {"rows", rows}, {"rhs", s.rhs}};
}

int run_gen(const GenOptions& o) {
  const bool json = o.format == "json";
  require(json || o.format == "text", "format must be text or json");
  std::ostringstream buf;
  const auto eps = parse_rational(o.eps);
  const auto h = graph::PatternGraph::star(o.k);
  if (o.kind == "h-free" || o.kind == "h-far") {
    const auto g = o.kind == "h-free"
                       ? instances::gen_h_free_instance(o.n, o.d_out, h, o.seed)
                       : instances::gen_far_h_instance(o.n, o.d_out, h, eps, o.seed).graph;
    if (json) buf << graph::to_json(g).dump() << '\n';
    else graph::write_text(buf, g);
  } else if (o.kind == "collision-free" || o.kind == "collision-far") {
    const auto s = instances::gen_collision_sequence(
        o.n, o.r ? o.r : o.n, o.k,
        o.kind == "collision-free" ? instances::CollisionMode::Free : instances::CollisionMode::Far,
        eps, o.seed);
    if (json) buf << instances::to_json(s).dump() << '\n';
    else instances::write_text(buf, s);
  } else if (o.kind == "lin2-yes" || o.kind == "lin2-no") {
    auto hard = lin2::search_hard_matrix(o.n, o.c, parse_rational(o.delta), o.seed);
    require(hard.found, "no hard matrix found for these parameters");
    const auto sys = o.kind == "lin2-yes" ? lin2::sample_yes(hard.system, derive_seed(o.seed, 1)).system
                                          : lin2::sample_no(hard.system, derive_seed(o.seed, 1));
    if (json) buf << lin2_json(sys).dump() << '\n';
    else lin2::write_text(buf, sys);
  } else {
    throw InputError("unknown kind: " + o.kind);
  }
  if (o.out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(o.out);
    require(static_cast<bool>(f), "cannot open " + o.out);
    f << buf.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property-testing workbench: quantum k-source-subgraph-freeness tester, "
               "dual-polynomial certification, E(3,c)LIN-2 hardness checks"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  RawOptions raw;
  auto* scale = app.add_subcommand("scale", "Run a query-scaling experiment and fit the exponent");
  add_common(scale, cfg, raw);
  add_scaling(scale, cfg, raw);

  auto* certify = app.add_subcommand("certify", "Run the exact dual-polynomial suite");
  add_common(certify, cfg, raw);
  certify->add_option("--gamma", raw.gamma, "Gap parameter; 0 picks the coupled default");

  auto* game = app.add_subcommand("lin2-game", "Hard matrices, yes/no samplers and the query game");
  add_common(game, cfg, raw);
  game->add_option("--lin2-n", cfg.lin2.n, "Variables of the hard matrix");
  game->add_option("--lin2-c", cfg.lin2.c, "Row multiplier of the hard matrix");
  game->add_option("--delta", raw.delta, "Independence fraction");
  game->add_option("--alpha", raw.alpha, "Farness slack: no-instances should be (1/2 - alpha)-far");
  game->add_option("--no-n", cfg.lin2.no_n, "Variables of the no-instance check");
  game->add_option("--no-c", cfg.lin2.no_c, "Row multiplier of the no-instance check");
  game->add_option("--seeds", cfg.lin2.seeds, "Seeds per check");
  game->add_option("--max-attempts", cfg.lin2.max_attempts, "Hard-matrix search attempts");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate one instance");
  gen->add_option("--kind", gen_opts.kind,
                  "h-free | h-far | collision-free | collision-far | lin2-yes | lin2-no");
  gen->add_option("--n", gen_opts.n, "Vertices, sequence length or variables");
  gen->add_option("--k", gen_opts.k, "Star leaves / collision size");
  gen->add_option("--d-out", gen_opts.d_out, "Out-degree bound");
  gen->add_option("--r", gen_opts.r, "Value range for sequences (default n)");
  gen->add_option("--c", gen_opts.c, "Row multiplier for lin2");
  gen->add_option("--eps", gen_opts.eps, "Distance parameter");
  gen->add_option("--delta", gen_opts.delta, "Independence fraction for lin2");
  gen->add_option("--seed", gen_opts.seed, "Seed");
  gen->add_option("--format", gen_opts.format, "text | json");
  gen->add_option("--out", gen_opts.out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (scale->parsed()) return run_scale(cfg, raw);
    if (certify->parsed()) return run_certify(cfg, raw);
    if (game->parsed()) return run_lin2(cfg, raw);
    if (gen->parsed()) return run_gen(gen_opts);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
