#include "qpt/testers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "qpt/instances.hpp"

namespace qpt::testers {

const char* to_string(Verdict v) {
  return v == Verdict::Accept ? "accept" : "reject";
}

nlohmann::json to_json(const TesterVerdict& v) {
  nlohmann::json j = {{"verdict", to_string(v.verdict)},
                      {"queries_classical", v.ledger.classical_queries},
                      {"queries_charged", v.ledger.grover_charged_queries},
                      {"seed", v.seed}};
  if (v.witness) j["witness"] = *v.witness;
  if (v.collision_indices) j["collision_indices"] = *v.collision_indices;
  return j;
}

namespace {

void check_common(const graph::OracleView& view, const graph::PatternGraph& h,
                  const Rational& eps) {
  require(h.k() >= 2, "pattern needs at least 2 source components");
  require(eps > 0 && eps < 1, "eps must lie in (0, 1)");
  require(view.n() >= 2, "graph needs at least 2 vertices");
}

// Distinct uniform vertices in draw order.
std::vector<Vertex> sample_distinct(std::uint64_t n, std::uint64_t count,
                                    Rng& rng) {
  std::vector<Vertex> out;
  if (count >= n) {
    out.resize(n);
    std::iota(out.begin(), out.end(), Vertex{0});
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  }
  std::unordered_set<Vertex> seen;
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  while (out.size() < count) {
    auto v = static_cast<Vertex>(pick(rng));
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

std::uint64_t int_pow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r *= base;
  }
  return r;
}

// All injective maps from `count` items into `k` component indices.
std::vector<std::vector<std::size_t>> injections(std::size_t count,
                                                 std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::vector<bool> used(k, false);
  auto rec = [&](auto&& self) -> void {
    if (current.size() == count) {
      out.push_back(current);
      return;
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (used[c]) continue;
      used[c] = true;
      current.push_back(c);
      self(self);
      current.pop_back();
      used[c] = false;
    }
  };
  rec(rec);
  return out;
}

class QuantumRun {
 public:
  QuantumRun(graph::OracleView& view, const graph::PatternGraph& h,
             const QuantumTesterConfig& config, std::uint64_t scale)
      : view_(view),
        h_(h),
        config_(config),
        scale_(scale),
        rng_(config.seed),
        full_(graph::SearchGraph::from_source(view.source())),
        worst_cost_(std::max<std::uint64_t>(1, int_pow(view.d_out(), h.h()))) {}

  TesterVerdict run() {
    config_.model.validate();
    require(config_.repetitions >= 1, "repetitions must be at least 1");
    require(config_.promise_fraction > 0.0, "promise_fraction must be positive");
    const std::size_t k = h_.k();
    const auto schedule = make_schedule(k, view_.n());

    // Stage 1: classical sampling.
    const std::uint64_t first = std::min<std::uint64_t>(view_.n(), scale_ * schedule.at(1));
    for (Vertex v : sample_distinct(view_.n(), first, rng_)) {
      explore(v);
      partials_.push_back({v});
      excluded_.insert(v);
    }

    for (std::size_t i = 2; i <= k; ++i) {
      const std::uint64_t domain = view_.n() - excluded_.size();
      if (domain == 0) return finish(std::nullopt);
      const double kappa = i == 2 ? config_.promise_fraction : 1.0;
      const double previous = i == 2 ? static_cast<double>(first)
                                     : static_cast<double>(schedule.at(i - 1));
      const double t0 = std::clamp(kappa * previous, 1.0,
          static_cast<double>(domain));
      compute_marked();

      if (i < k) {
        const std::uint64_t target = schedule.at(i);
        std::vector<Vertex> found;
        std::set<Vertex> found_set;
        const std::uint64_t budget = config_.repetitions * target;
        for (std::uint64_t call = 0; call < budget && found.size() < target; ++call) {
          auto out = search(domain, t0);
          if (out && found_set.insert(*out).second) found.push_back(*out);
        }
        if (found.size() < target) return finish(std::nullopt);
        std::vector<std::vector<Vertex>> next;
        for (Vertex v : found) {
          explore(v);
          auto partial = partials_[marked_by_.at(v)];
          partial.push_back(v);
          next.push_back(std::move(partial));
          excluded_.insert(v);
        }
        partials_ = std::move(next);
      } else {
        for (std::uint64_t call = 0; call < config_.repetitions * scale_; ++call) {
          auto out = search(domain, t0);
          if (!out) continue;
          explore(*out);
          auto members = partials_[marked_by_.at(*out)];
          members.push_back(*out);
          if (auto witness = extract_witness(members)) return finish(witness);
        }
      }
    }
    return finish(std::nullopt);
  }

 private:
  void explore(Vertex v) {
    if (balls_.count(v)) return;
    const auto before = view_.ledger().classical_queries;
    balls_.emplace(v, graph::bfs_limited(view_, v, h_.h()));
    observed_cost_ = std::max<std::uint64_t>(
        observed_cost_, view_.ledger().classical_queries - before);
  }

  std::uint64_t predicate_cost() const {
    return config_.charge_actual_bfs ? std::max<std::uint64_t>(1, observed_cost_)
                                     : worst_cost_;
  }

  // Full-knowledge evaluation of "v extends a stored partial solution by a
  // new source component". Not charged: the Grover charge stands for it.
  void compute_marked() {
    marked_by_.clear();
    for (std::size_t idx = 0; idx < partials_.size(); ++idx) {
      const auto& members = partials_[idx];
      for (const auto& assignment : injections(members.size(), h_.k())) {
        graph::MatchConstraints c;
        std::vector<bool> taken(h_.k(), false);
        for (std::size_t j = 0; j < members.size(); ++j) {
          c.anchors.push_back({members[j], assignment[j]});
          taken[assignment[j]] = true;
        }
        graph::for_each_embedding(full_, h_, c, [&](const graph::Embedding& e) {
          for (std::size_t comp = 0; comp < h_.k(); ++comp) {
            if (taken[comp]) continue;
            for (Vertex p : h_.source_components()[comp]) {
              Vertex v = e[p];
              if (!excluded_.count(v)) marked_by_.emplace(v, idx);
            }
          }
          return true;
        });
      }
    }
    marked_.clear();
    for (const auto& [v, idx] : marked_by_) marked_.push_back(v);
  }

  std::optional<Vertex> search(std::uint64_t domain, double t0) {
    auto out = grover_sample_marked(config_.model, rng_, domain, t0,
                                    predicate_cost(), marked_);
    view_.charge_grover(out.charged);
    if (!out.element) return std::nullopt;
    return static_cast<Vertex>(*out.element);
  }

  std::optional<graph::Embedding> extract_witness(
      const std::vector<Vertex>& members) {
    std::vector<graph::ExploredBall> balls;
    for (Vertex v : members) balls.push_back(balls_.at(v));
    for (const auto& assignment : injections(members.size(), h_.k())) {
      std::vector<graph::ComponentAnchor> anchors;
      for (std::size_t j = 0; j < members.size(); ++j) {
        anchors.push_back({members[j], assignment[j]});
      }
      auto e = graph::find_h_copy_in_balls(balls, h_, anchors);
      if (e && graph::verify_embedding(view_.source(), h_, *e)) return e;
    }
    return std::nullopt;
  }

  TesterVerdict finish(std::optional<graph::Embedding> witness) {
    TesterVerdict v;
    v.verdict = witness ? Verdict::Reject : Verdict::Accept;
    v.witness = std::move(witness);
    v.ledger = view_.ledger();
    v.seed = config_.seed;
    return v;
  }

  graph::OracleView& view_;
  const graph::PatternGraph& h_;
  QuantumTesterConfig config_;
  std::uint64_t scale_;
  Rng rng_;
  graph::SearchGraph full_;
  std::uint64_t worst_cost_;
  std::uint64_t observed_cost_ = 0;
  std::map<Vertex, graph::ExploredBall> balls_;
  std::vector<std::vector<Vertex>> partials_;
  std::set<Vertex> excluded_;
  std::map<Vertex, std::size_t> marked_by_;
  std::vector<std::uint64_t> marked_;
};

}  // namespace

TesterVerdict test_h_freeness_quantum(graph::OracleView& view,
                                      const graph::PatternGraph& h,
                                      const Rational& eps,
                                      const QuantumTesterConfig& config) {
  check_common(view, h, eps);
  require(config.reference_eps > 0.0 && config.reference_eps < 1.0,
          "reference_eps must lie in (0, 1)");
  const double ratio = config.reference_eps / eps.get_d();
  const auto scale = static_cast<std::uint64_t>(std::max(1.0, std::ceil(ratio - 1e-9)));
  return QuantumRun(view, h, config, scale).run();
}

std::uint64_t classical_sample_size(std::uint64_t n, std::size_t k,
                                    double sample_constant) {
  require(sample_constant > 0.0, "sample_constant must be positive");
  const double exponent = 1.0 - 1.0 / static_cast<double>(k);
  const double raw = sample_constant * std::pow(static_cast<double>(n), exponent);
  return std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::ceil(raw)));
}

TesterVerdict test_h_freeness_classical(graph::OracleView& view,
                                        const graph::PatternGraph& h,
                                        const Rational& eps,
                                        const ClassicalTesterConfig& config) {
  check_common(view, h, eps);
  Rng rng(config.seed);
  auto sample = sample_distinct(view.n(),
                                classical_sample_size(view.n(), h.k(),
                                                      config.sample_constant),
                                rng);
  std::vector<graph::ExploredBall> balls;
  balls.reserve(sample.size());
  for (Vertex v : sample) balls.push_back(graph::bfs_limited(view, v, h.h()));
  std::unordered_set<Vertex> sampled(sample.begin(), sample.end());

  auto explored = graph::SearchGraph::from_balls(balls);
  graph::MatchConstraints c;
  c.component_hit = [&sampled](Vertex v) { return sampled.count(v) > 0; };
  std::optional<graph::Embedding> witness;
  graph::for_each_embedding(explored, h, c, [&](const graph::Embedding& e) {
    if (!graph::verify_embedding(view.source(), h, e)) return true;
    witness = e;
    return false;
  });

  TesterVerdict v;
  v.verdict = witness ? Verdict::Reject : Verdict::Accept;
  v.witness = std::move(witness);
  v.ledger = view.ledger();
  v.seed = config.seed;
  return v;
}

TesterVerdict test_collision_freeness(const instances::IntegerSequence& s,
                                      std::size_t k, const Rational& eps,
                                      const QuantumTesterConfig& config) {
  require(k >= 2, "k must be at least 2");
  instances::CollisionStarSource source(s, 1);
  graph::OracleView view(source);
  const auto star = graph::PatternGraph::star(k);
  auto verdict = test_h_freeness_quantum(
      view, star, instances::reduced_epsilon(eps, s.n(), s.r, 1), config);
  if (verdict.witness) {
    std::vector<std::uint64_t> indices;
    for (Vertex leaf = 0; leaf < k; ++leaf) indices.push_back((*verdict.witness)[leaf]);
    std::sort(indices.begin(), indices.end());
    for (auto i : indices) {
      if (i >= s.n() || s.values[i] != s.values[indices.front()]) {
        throw std::logic_error("collision witness failed verification");
      }
    }
    verdict.collision_indices = std::move(indices);
  }
  return verdict;
}

}  // namespace qpt::testers
