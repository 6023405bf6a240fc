#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "qpt/digraph.hpp"

namespace qpt::graph {

// Text format:
//   n d_out
//   <out-neighbors of vertex 0, space separated>
//   ...
//   <out-neighbors of vertex n-1>
// Empty lines stand for vertices without out-edges.
void write_text(std::ostream& out, const Digraph& g);
Digraph read_text(std::istream& in, bool allow_self_loops = false);

nlohmann::json to_json(const Digraph& g);
Digraph from_json(const nlohmann::json& j, bool allow_self_loops = false);

}  // namespace qpt::graph
