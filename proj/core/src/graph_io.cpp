#include "qpt/graph_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace qpt::graph {

void write_text(std::ostream& out, const Digraph& g) {
  out << g.n() << ' ' << g.d_out() << '\n';
  for (Vertex v = 0; v < g.n(); ++v) {
    bool first = true;
    for (Vertex w : g.out(v)) {
      if (!first) out << ' ';
      out << w;
      first = false;
    }
    out << '\n';
  }
}

Digraph read_text(std::istream& in, bool allow_self_loops) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("graph text: missing header");
  std::istringstream header(line);
  long long n = -1;
  long long d = -1;
  if (!(header >> n >> d) || n < 0 || d < 0) {
    throw InputError("graph text: header must be 'n d_out'");
  }
  std::vector<std::vector<Vertex>> adjacency(static_cast<std::size_t>(n));
  for (long long v = 0; v < n; ++v) {
    if (!std::getline(in, line)) {
      throw InputError("graph text: expected " + std::to_string(n) +
                       " adjacency lines, got " + std::to_string(v));
    }
    std::istringstream row(line);
    long long w;
    while (row >> w) {
      if (w < 0 || w >= n) throw InputError("graph text: neighbor out of range");
      adjacency[v].push_back(static_cast<Vertex>(w));
    }
    if (!row.eof()) throw InputError("graph text: malformed adjacency line");
  }
  return Digraph::from_adjacency(std::move(adjacency),
                                 static_cast<std::size_t>(d), allow_self_loops);
}

nlohmann::json to_json(const Digraph& g) {
  nlohmann::json adj = nlohmann::json::array();
  for (Vertex v = 0; v < g.n(); ++v) {
    adj.push_back(std::vector<Vertex>(g.out(v).begin(), g.out(v).end()));
  }
  return {{"n", g.n()}, {"d_out", g.d_out()}, {"adj", adj}};
}

Digraph from_json(const nlohmann::json& j, bool allow_self_loops) {
  try {
    auto n = j.at("n").get<std::size_t>();
    auto d = j.at("d_out").get<std::size_t>();
    auto adjacency = j.at("adj").get<std::vector<std::vector<Vertex>>>();
    if (adjacency.size() != n) throw InputError("graph json: adj length != n");
    return Digraph::from_adjacency(std::move(adjacency), d, allow_self_loops);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("graph json: ") + e.what());
  }
}

}  // namespace qpt::graph
