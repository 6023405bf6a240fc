#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "qpt/harness.hpp"
#include "qpt/instances.hpp"

namespace qpt::harness {

const char* to_string(Problem p) {
  switch (p) {
    case Problem::HFreeness: return "h-freeness";
    case Problem::Collision: return "collision";
    case Problem::DualpolyCert: return "dualpoly-cert";
    case Problem::Lin2Game: return "lin2-game";
  }
  return "?";
}

const char* to_string(InstanceKind k) { return k == InstanceKind::Free ? "free" : "far"; }
const char* to_string(TesterKind t) { return t == TesterKind::Quantum ? "quantum" : "classical"; }

Problem parse_problem(const std::string& s) {
  for (auto p : {Problem::HFreeness, Problem::Collision, Problem::DualpolyCert, Problem::Lin2Game})
    if (s == to_string(p)) return p;
  throw InputError("unknown problem: " + s);
}

InstanceKind parse_instance_kind(const std::string& s) {
  if (s == "free") return InstanceKind::Free;
  if (s == "far") return InstanceKind::Far;
  throw InputError("unknown instance kind: " + s);
}

TesterKind parse_tester_kind(const std::string& s) {
  if (s == "quantum") return TesterKind::Quantum;
  if (s == "classical") return TesterKind::Classical;
  throw InputError("unknown tester: " + s);
}

void ExperimentConfig::validate() const {
  require(k >= 2 && k <= 8, "k must lie in [2, 8]");
  require(eps > 0 && eps < 1, "eps must lie in (0, 1)");
  require(gamma >= 0, "gamma must be non-negative");
  require(d_out >= 1, "d_out must be at least 1");
  quantum.model.validate();
  require(quantum.repetitions >= 1, "repetitions must be at least 1");
  require(quantum.promise_fraction > 0 && quantum.promise_fraction <= 1,
          "promise fraction must lie in (0, 1]");
  require(quantum.reference_eps > 0 && quantum.reference_eps < 1,
          "reference eps must lie in (0, 1)");
  require(classical_constant > 0, "classical constant must be positive");
  if (problem == Problem::HFreeness || problem == Problem::Collision) {
    require(trials >= 1, "trials must be at least 1");
    require(n_grid.size() >= 4, "n grid needs at least 4 points for an exponent fit");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
      require(n_grid[i] >= 8, "grid values must be at least 8");
      if (i > 0) require(n_grid[i] > n_grid[i - 1], "n grid must be strictly increasing");
    }
  }
}

double target_exponent(TesterKind tester, std::size_t k) {
  if (tester == TesterKind::Classical) return 1.0 - 1.0 / static_cast<double>(k);
  return 0.5 * (1.0 - 1.0 / (std::ldexp(1.0, static_cast<int>(k)) - 1.0));
}

namespace {

testers::TesterVerdict run_one(const ExperimentConfig& cfg, std::uint64_t n, std::uint64_t seed,
                               const graph::PatternGraph& h) {
  testers::QuantumTesterConfig qc = cfg.quantum;
  qc.seed = derive_seed(seed, 2);
  const testers::ClassicalTesterConfig cc{cfg.classical_constant, derive_seed(seed, 2)};
  const bool far = cfg.instance == InstanceKind::Far;

  if (cfg.problem == Problem::Collision) {
    const std::uint64_t r = n;
    auto s = instances::gen_collision_sequence(
        n, r, cfg.k, far ? instances::CollisionMode::Far : instances::CollisionMode::Free,
        cfg.eps, derive_seed(seed, 1));
    if (cfg.tester == TesterKind::Quantum) return testers::test_collision_freeness(s, cfg.k, cfg.eps, qc);
    instances::CollisionStarSource src(s, 1);
    graph::OracleView view(src);
    return testers::test_h_freeness_classical(view, h, instances::reduced_epsilon(cfg.eps, n, r, 1),
                                              cc);
  }
  graph::Digraph g =
      far ? instances::gen_far_h_instance(n, cfg.d_out, h, cfg.eps, derive_seed(seed, 1)).graph
          : instances::gen_h_free_instance(n, cfg.d_out, h, derive_seed(seed, 1));
  graph::DigraphSource src(g);
  graph::OracleView view(src);
  if (cfg.tester == TesterKind::Quantum) return testers::test_h_freeness_quantum(view, h, cfg.eps, qc);
  return testers::test_h_freeness_classical(view, h, cfg.eps, cc);
}

}  // namespace

ScalingResult run_scaling(const ExperimentConfig& config) {
  config.validate();
  require(config.problem == Problem::HFreeness || config.problem == Problem::Collision,
          "run_scaling handles h-freeness and collision problems");
  const auto h = graph::PatternGraph::star(config.k);
  const std::size_t points = config.n_grid.size();
  const std::size_t tasks = points * config.trials;

  std::vector<std::optional<TrialRecord>> records(tasks);
  std::vector<std::optional<std::string>> errors(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::uint64_t n = config.n_grid[t / config.trials];
      const std::size_t trial = t % config.trials;
      const std::uint64_t seed = derive_seed(config.seed, n, trial);
      try {
        auto v = run_one(config, n, seed, h);
        records[t] = TrialRecord{n, trial, v.verdict, v.ledger.classical_queries,
                                 v.ledger.grover_charged_queries, seed};
      } catch (const std::exception& e) {
        errors[t] = e.what();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(tasks, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  ScalingResult out;
  out.config = config;
  out.target_exponent = target_exponent(config.tester, config.k);
  std::vector<std::pair<double, double>> fit_points;
  for (std::size_t p = 0; p < points; ++p) {
    PointSummary s;
    s.n = config.n_grid[p];
    std::vector<double> totals;
    for (std::size_t t = p * config.trials; t < (p + 1) * config.trials; ++t) {
      if (errors[t] && !s.error) s.error = *errors[t];
      if (!records[t]) continue;
      const auto& r = *records[t];
      out.trials.push_back(r);
      totals.push_back(static_cast<double>(r.q_classical + r.q_charged));
      s.mean_charged += static_cast<double>(r.q_charged);
      if (r.verdict == testers::Verdict::Reject) ++s.rejects;
    }
    s.trials = totals.size();
    if (s.trials > 0) {
      const double cnt = static_cast<double>(s.trials);
      for (double q : totals) s.mean_queries += q;
      s.mean_queries /= cnt;
      s.mean_charged /= cnt;
      for (double q : totals) s.stddev_queries += (q - s.mean_queries) * (q - s.mean_queries);
      s.stddev_queries = s.trials > 1 ? std::sqrt(s.stddev_queries / (cnt - 1)) : 0.0;
      s.reject_rate = static_cast<double>(s.rejects) / cnt;
    }
    if (!s.error && s.mean_queries > 0)
      fit_points.emplace_back(static_cast<double>(s.n), s.mean_queries);
    out.points.push_back(std::move(s));
  }
  try {
    out.fit = fit_exponent(fit_points);
  } catch (const InputError& e) {
    out.fit_error = e.what();
  }
  return out;
}

std::string scaling_csv(const ScalingResult& r) {
  std::ostringstream out;
  out << "n,trial,verdict,q_classical,q_charged,seed\n";
  for (const auto& t : r.trials)
    out << t.n << ',' << t.trial << ',' << testers::to_string(t.verdict) << ',' << t.q_classical
        << ',' << t.q_charged << ',' << t.seed << '\n';
  return out.str();
}

nlohmann::json scaling_summary(const ScalingResult& r) {
  const auto& c = r.config;
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.points) {
    points.push_back({{"n", p.n},
                      {"trials", p.trials},
                      {"mean_queries", p.mean_queries},
                      {"stddev_queries", p.stddev_queries},
                      {"mean_charged", p.mean_charged},
                      {"rejects", p.rejects},
                      {"reject_rate", p.reject_rate},
                      {"error", p.error ? nlohmann::json(*p.error) : nlohmann::json(nullptr)}});
  }
  return {{"problem", to_string(c.problem)},
          {"tester", to_string(c.tester)},
          {"instance", to_string(c.instance)},
          {"k", c.k},
          {"eps", rational_to_json(c.eps)},
          {"d_out", c.d_out},
          {"trials", c.trials},
          {"seed", c.seed},
          {"n_grid", c.n_grid},
          {"grover",
           {{"c_g", c.quantum.model.c_g},
            {"p_succ", c.quantum.model.p_succ},
            {"repetitions", c.quantum.repetitions},
            {"promise_fraction", c.quantum.promise_fraction},
            {"reference_eps", c.quantum.reference_eps}}},
          {"classical_constant", c.classical_constant},
          {"points", points},
          {"fit", r.fit ? to_json(*r.fit) : nlohmann::json(nullptr)},
          {"fit_error", r.fit_error ? nlohmann::json(*r.fit_error) : nlohmann::json(nullptr)},
          {"target_exponent", r.target_exponent}};
}

std::vector<std::string> validate_summary_schema(const nlohmann::json& j) {
  using nlohmann::json;
  using Type = json::value_t;
  std::vector<std::string> problems;
  auto is_number = [](const json& v) { return v.is_number(); };
  auto is_uint = [](const json& v) { return v.is_number_unsigned(); };
  auto check = [&](const json& obj, const std::string& path, const char* key,
                   const std::function<bool(const json&)>& ok) {
    if (!obj.is_object() || !obj.contains(key))
      problems.push_back(path + key + ": missing");
    else if (!ok(obj.at(key)))
      problems.push_back(path + key + ": wrong type");
  };
  auto of = [](Type t) { return [t](const json& v) { return v.type() == t; }; };
  auto string_or_null = [](const json& v) { return v.is_string() || v.is_null(); };

  if (!j.is_object()) return {"summary: not an object"};
  check(j, "", "problem", of(Type::string));
  check(j, "", "tester", of(Type::string));
  check(j, "", "instance", of(Type::string));
  check(j, "", "k", is_uint);
  check(j, "", "eps", [](const json& v) {
    return v.is_object() && v.contains("num") && v.contains("den") && v["num"].is_string() &&
           v["den"].is_string();
  });
  check(j, "", "d_out", is_uint);
  check(j, "", "trials", is_uint);
  check(j, "", "seed", is_uint);
  check(j, "", "n_grid", [&](const json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), is_uint);
  });
  check(j, "", "grover", of(Type::object));
  if (j.contains("grover"))
    for (const char* key : {"c_g", "p_succ", "repetitions", "promise_fraction", "reference_eps"})
      check(j["grover"], "grover.", key, is_number);
  check(j, "", "classical_constant", is_number);
  check(j, "", "target_exponent", is_number);
  check(j, "", "fit_error", string_or_null);
  check(j, "", "fit", [](const json& v) { return v.is_null() || v.is_object(); });
  if (j.contains("fit") && j["fit"].is_object()) {
    for (const char* key : {"slope", "intercept", "r2", "slope_stderr"})
      check(j["fit"], "fit.", key, is_number);
    check(j["fit"], "fit.", "points", is_uint);
    check(j["fit"], "fit.", "ci95", [&](const json& v) {
      return v.is_array() && v.size() == 2 && is_number(v[0]) && is_number(v[1]);
    });
  }
  check(j, "", "points", of(Type::array));
  if (j.contains("points") && j["points"].is_array()) {
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
      const auto& p = j["points"][i];
      const std::string path = "points[" + std::to_string(i) + "].";
      for (const char* key : {"n", "trials", "rejects"}) check(p, path, key, is_uint);
      for (const char* key : {"mean_queries", "stddev_queries", "mean_charged", "reject_rate"})
        check(p, path, key, is_number);
      check(p, path, "error", string_or_null);
    }
  }
  return problems;
}

void write_json(const nlohmann::json& j, const std::filesystem::path& file) {
  std::ofstream out(file);
  require(static_cast<bool>(out), "cannot open " + file.string());
  out << j.dump(2) << '\n';
}

void write_scaling(const ScalingResult& r, const std::filesystem::path& dir) {
  const auto summary = scaling_summary(r);
  const auto problems = validate_summary_schema(summary);
  if (!problems.empty()) throw std::logic_error("summary schema violation: " + problems.front());
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "scaling.csv");
    require(static_cast<bool>(csv), "cannot open " + (dir / "scaling.csv").string());
    csv << scaling_csv(r);
  }
  write_json(summary, dir / "summary.json");
}

}  // namespace qpt::harness
