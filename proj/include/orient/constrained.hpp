#pragma once

// Orientation under a fixed root edge and fixed in-degrees.
//
// For a binary network the in-degree map is determined by the set of vertices
// that must become reticulations. If an orientation satisfying the constraint
// exists it is unique, and it is found by forced-move propagation from the
// root in O(|E|).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "orient/network.hpp"

namespace orient {

// Id given to the vertex inserted on the root edge.
inline constexpr std::string_view kRootName = "__root";

struct OrientationConstraint {
  Edge root_edge;
  std::vector<Vertex> reticulations;  // V_R: vertices of desired in-degree 2
};

// Throws std::invalid_argument unless the root edge exists, V_R has exactly r
// distinct internal vertices.
void check_constraint(const UndirectedNetwork& n, const OrientationConstraint& c);

struct ConstrainedStats {
  std::size_t edges_oriented = 0;
  std::size_t propagation_steps = 0;
};

struct ConstrainedResult {
  std::optional<DirectedNetwork> network;  // empty when infeasible
  ConstrainedStats stats;

  bool feasible() const { return network.has_value(); }
};

ConstrainedResult orient_constrained(const UndirectedNetwork& n, const OrientationConstraint& c);

// Every orientation satisfying the constraint, found by enumerating edge
// directions (with in-degree pruning only). Throws std::length_error above
// `max_edges` edges.
std::vector<DirectedNetwork> orient_exhaustive_oracle(const UndirectedNetwork& n, const OrientationConstraint& c,
                                                      std::size_t max_edges = 22);

// Reusable propagation engine bound to one network; the solvers call run()
// millions of times, so it keeps its buffers between calls.
class ConstrainedOrienter {
 public:
  explicit ConstrainedOrienter(const UndirectedNetwork& n);

  // `indegree[v]` is 1 or 2 for every vertex (leaves 1). Returns true when the
  // unique orientation exists.
  bool run(std::size_t root_edge, std::span<const std::uint8_t> indegree);

  // Valid after a successful run(): +1 if edge i is oriented u -> v, -1 if v -> u.
  // The root edge is reported as 0.
  std::span<const std::int8_t> directions() const { return direction_; }
  const ConstrainedStats& stats() const { return stats_; }
  DirectedNetwork materialize() const;

 private:
  void orient(std::size_t edge, Vertex from);

  const UndirectedNetwork* net_;
  std::size_t root_edge_ = 0;
  std::vector<std::int8_t> direction_;
  std::vector<std::uint8_t> in_, out_, open_, want_in_, want_out_;
  std::vector<Vertex> queue_;
  std::vector<char> queued_;
  ConstrainedStats stats_;
};

// Builds the rooted network for a full assignment of edge directions.
DirectedNetwork build_orientation(const UndirectedNetwork& n, std::size_t root_edge,
                                  std::span<const std::int8_t> directions);

}  // namespace orient
