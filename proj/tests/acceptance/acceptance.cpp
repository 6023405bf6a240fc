// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "qpt/dualpoly.hpp"
#include "qpt/graph_io.hpp"
#include "qpt/harness.hpp"
#include "qpt/instances.hpp"
#include "qpt/lin2.hpp"
#include "qpt/matcher.hpp"
#include "qpt/oracle.hpp"
#include "qpt/sequence.hpp"
#include "qpt/testers.hpp"

using namespace qpt;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, double seconds, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s [%.1fs]\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& line) {
  std::printf("INFO %s\n", line.c_str());
  std::fflush(stdout);
}

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void run_criterion(int id, const std::string& name, const std::function<void(int, const std::string&)>& body) {
  try {
    body(id, name);
  } catch (const std::exception& e) {
    report(id, name, false, 0.0, std::string("exception: ") + e.what());
  }
}

// 1. Quantum scaling exponent, k = 2 and k = 3.
void scaling(int id, const std::string& name) {
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::size_t k : {2, 3}) {
    harness::ExperimentConfig c;
    c.k = k;
    c.trials = 50;
    c.seed = 1;
    auto r = harness::run_scaling(c);
    const double target = harness::target_exponent(harness::TesterKind::Quantum, k);
    if (!r.fit) {
      pass = false;
      detail += fmt("k=%zu no fit (%s); ", k, r.fit_error.value_or("?").c_str());
      continue;
    }
    std::size_t rejects = 0;
    for (const auto& p : r.points) rejects += p.rejects;
    const bool ok = std::abs(r.fit->slope - target) <= 0.05 && rejects == 0;
    pass = pass && ok;
    detail += fmt("k=%zu slope %.4f target %.4f tol 0.05 r2 %.4f; ", k, r.fit->slope, target,
                  r.fit->r2);

    c.instance = harness::InstanceKind::Far;
    auto far = harness::run_scaling(c);
    if (far.fit) info(fmt("k=%zu far-instance slope %.4f (not asserted)", k, far.fit->slope));
  }
  const double secs = since(start);
  pass = pass && secs <= 300.0;
  report(id, name, pass, secs, detail + "runtime limit 300s");
}

// 2. One-sided error on free instances, rejection rate on far instances.
void correctness(int id, const std::string& name) {
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::size_t k : {2, 3}) {
    const auto h = graph::PatternGraph::star(k);
    int free_rejects = 0, far_rejects = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      testers::QuantumTesterConfig q;
      q.seed = derive_seed(7, k, 2 * t);
      auto g = instances::gen_h_free_instance(1024, 1, h, derive_seed(11, k, t));
      graph::DigraphSource fsrc(g);
      graph::OracleView fv(fsrc);
      free_rejects += testers::test_h_freeness_quantum(fv, h, Rational(1, 20), q).verdict ==
                      testers::Verdict::Reject;

      q.seed = derive_seed(7, k, 2 * t + 1);
      auto inst = instances::gen_far_h_instance(1024, 1, h, Rational(1, 20), derive_seed(13, k, t));
      graph::DigraphSource src(inst.graph);
      graph::OracleView view(src);
      auto v = testers::test_h_freeness_quantum(view, h, Rational(1, 20), q);
      if (v.verdict == testers::Verdict::Reject) {
        if (!v.witness || !graph::verify_embedding(inst.graph, h, *v.witness)) {
          pass = false;
          detail += "unverified witness; ";
        }
        ++far_rejects;
      }
    }
    pass = pass && free_rejects == 0 && 3 * far_rejects >= 2 * 100;
    detail += fmt("k=%zu free rejects %d/100, far reject rate %d/100 (need >= 2/3); ", k,
                  free_rejects, far_rejects);
  }
  report(id, name, pass, since(start), detail);
}

// 3. Collision-to-star reduction and the dummy reduction.
void reductions(int id, const std::string& name) {
  const auto start = Clock::now();
  Rng rng(3);
  int mismatches = 0, dummy_mismatches = 0, collisions = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng() % 11;
    const std::uint64_t r = 1 + rng() % 6;
    const std::size_t k = 2 + rng() % 3;
    instances::IntegerSequence s{r, 1, {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(1 + rng() % r);
    const bool collision = instances::has_k_collision(s, k);
    collisions += collision;
    const auto g = instances::reduce_collision_to_star(s, 1);
    const bool star = !graph::is_h_free(g, graph::PatternGraph::star(k));
    mismatches += collision != star;
  }
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const std::uint64_t r = 1 + rng() % 6;
    instances::IntegerSequence s{r, 0, {}};
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng() % (r + 1));
    auto out = instances::reduce_dummy_collision(s).sequence;
    dummy_mismatches += instances::k_collision_values(s, 3, true) != instances::k_collision_values(out, 3);
  }
  report(id, name, mismatches == 0 && dummy_mismatches == 0, since(start),
         fmt("star iff collision mismatches %d/500 (%d with collisions), dummy k=3 mismatches %d/500",
             mismatches, collisions, dummy_mismatches));
}

harness::CertificationReport certification;

// 4. Exact dual-polynomial suite (every asserted check except phd growth).
void dualpoly_suite(int id, const std::string& name) {
  const auto start = Clock::now();
  harness::ExperimentConfig c;
  c.problem = harness::Problem::DualpolyCert;
  certification = harness::run_certification(c);
  bool pass = true;
  std::size_t asserted = 0;
  for (const auto& check : certification.checks) {
    if (!check.asserted) {
      std::string extra;
      if (check.detail.is_object() && check.detail.contains("violations"))
        extra = fmt(", %zu violations", check.detail["violations"].size());
      info(fmt("dualpoly informational check '%s': %s%s", check.name.c_str(),
               check.passed ? "holds" : "does not hold", extra.c_str()));
      continue;
    }
    if (check.name.find("phd growth") != std::string::npos) continue;
    ++asserted;
    if (!check.passed) {
      pass = false;
      info("dualpoly check failed: " + check.name);
    }
  }
  const double secs = since(start);
  report(id, name, pass && secs <= 180.0, secs,
         fmt("%zu asserted checks, runtime limit 180s", asserted));
}

// 5. phd growth exponent at k = 2.
void phd_growth(int id, const std::string& name) {
  const auto start = Clock::now();
  std::vector<std::pair<double, double>> pts;
  std::string values;
  for (std::size_t N : {16, 32, 64, 128, 256}) {
    const auto psi = dualpoly::build_psi(dualpoly::build_omega(N, 2).omega);
    const auto d = dualpoly::phd_measure(psi);
    pts.emplace_back(static_cast<double>(N), static_cast<double>(d));
    values += fmt("%zu:%zu ", N, d);
  }
  const auto fit = harness::fit_exponent(pts);
  report(id, name, std::abs(fit.slope - 0.25) <= 0.1, since(start),
         fmt("phd %s-> slope %.4f, target 0.25 tol 0.1", values.c_str(), fit.slope));
}

// 6. Lin2 suite.
void lin2_suite(int id, const std::string& name) {
  const auto start = Clock::now();
  harness::ExperimentConfig c;
  c.problem = harness::Problem::Lin2Game;
  auto r = harness::run_lin2_game(c);
  std::string failed;
  for (const auto& check : r.checks)
    if (check.asserted && !check.passed) failed += check.name + "; ";
  report(id, name, r.all_passed(), since(start),
         fmt("%zu checks%s%s", r.checks.size(), failed.empty() ? "" : ", failed: ", failed.c_str()));
}

// 7. Byte-identical outputs for fixed seeds.
void determinism(int id, const std::string& name) {
  const auto start = Clock::now();
  bool pass = true;
  std::string detail;

  harness::ExperimentConfig c;
  c.n_grid = {256, 512, 1024, 2048};
  c.trials = 10;
  c.seed = 42;
  c.instance = harness::InstanceKind::Far;
  auto a = harness::run_scaling(c);
  c.threads = 1;
  auto b = harness::run_scaling(c);
  const bool scale_same = harness::scaling_csv(a) == harness::scaling_csv(b) &&
                          harness::scaling_summary(a).dump() == harness::scaling_summary(b).dump();
  pass = pass && scale_same;
  detail += fmt("scaling %s; ", scale_same ? "identical" : "differs");

  harness::ExperimentConfig l;
  l.lin2.seeds = 10;
  const bool lin2_same = harness::run_lin2_game(l).to_json().dump() == harness::run_lin2_game(l).to_json().dump();
  pass = pass && lin2_same;
  detail += fmt("lin2 %s; ", lin2_same ? "identical" : "differs");

  const auto h = graph::PatternGraph::star(3);
  auto text = [&] {
    std::ostringstream out;
    graph::write_text(out, instances::gen_far_h_instance(2048, 2, h, Rational(1, 20), 5).graph);
    return out.str();
  };
  const bool gen_same = text() == text();
  pass = pass && gen_same;
  detail += fmt("generator %s", gen_same ? "identical" : "differs");

  if (!certification.checks.empty()) {
    harness::ExperimentConfig d;
    d.problem = harness::Problem::DualpolyCert;
    const bool cert_same = harness::run_certification(d).to_json().dump() == certification.to_json().dump();
    pass = pass && cert_same;
    detail += fmt("; certification %s", cert_same ? "identical" : "differs");
  }
  report(id, name, pass, since(start), detail);
}

}  // namespace

int main() {
  run_criterion(1, "quantum scaling exponent", scaling);
  run_criterion(2, "tester correctness", correctness);
  run_criterion(3, "reduction soundness", reductions);
  run_criterion(4, "dual-polynomial exact suite", dualpoly_suite);
  run_criterion(5, "phd growth", phd_growth);
  run_criterion(6, "lin2 suite", lin2_suite);
  run_criterion(7, "determinism", determinism);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
