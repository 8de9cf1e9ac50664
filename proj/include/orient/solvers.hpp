#pragma once

// Class-constrained orientation solvers.
//
// All three solvers reduce to repeated constrained orientation: choose a set
// of r reticulations, try every root edge, and keep the first orientation the
// target class accepts. They differ only in which reticulation sets they try:
//
//   exact_c_orientation     one vertex from each cycle of a minimal cycle basis
//   tree_child_heuristic    only the tuples maximising the sum of pairwise distances
//   baseline_c_orientation  every r-subset of internal vertices
//
// Placements are visited in lexicographic order and root edges in edge-index
// order; the reported orientation is the first success in that order, also
// when the search runs on several threads.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orient/cycle_basis.hpp"
#include "orient/network.hpp"

namespace orient {

enum class Verdict { Oriented, No, ProbablyNo, Timeout };

std::string_view to_string(Verdict v);

// An orientation straight from the constrained orienter, before it is turned
// into a DirectedNetwork. The root sits on `root_edge`; indegree is 1 or 2.
struct OrientedView {
  const UndirectedNetwork& network;
  std::size_t root_edge;
  std::span<const std::int8_t> directions;
  std::span<const std::uint8_t> indegree;

  template <class F>
  void for_each_child(Vertex v, F&& f) const {
    for (auto e : network.incident_edges(v)) {
      if (e == root_edge) continue;
      const auto& edge = network.edge(e);
      if ((directions[e] > 0) == (edge.u == v)) f(edge.other(v));
    }
  }
};

// Membership test for a class of directed networks. `quick`, when set, must
// agree with `test` on every orientation and lets the search skip building
// rejected networks.
struct ClassPredicate {
  std::string name;
  std::function<bool(const DirectedNetwork&)> test;
  std::function<bool(const OrientedView&)> quick;
};

ClassPredicate tree_child_class();
ClassPredicate stack_free_class();
ClassPredicate any_class();
// "tree-child", "stack-free" or "any"; throws std::invalid_argument otherwise.
ClassPredicate class_by_name(std::string_view name);

struct SearchCounters {
  std::uint64_t placements_tried = 0;
  std::uint64_t constrained_calls = 0;
  double elapsed_seconds = 0.0;
};

struct Outcome {
  Verdict verdict = Verdict::No;
  std::optional<DirectedNetwork> network;
  std::vector<Vertex> placement;  // reticulations of the returned orientation
  std::optional<Edge> root_edge;
  SearchCounters counters;
};

// Reported for every feasible constrained orientation met during a search.
struct FeasibleOrientation {
  std::span<const Vertex> placement;
  Edge root_edge;
  const DirectedNetwork& network;
  bool accepted;  // whether the class predicate accepted it
};

struct SearchOptions {
  unsigned threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Called under a lock; with several threads the call order is unspecified.
  std::function<void(const FeasibleOrientation&)> on_feasible;
};

struct BaselineOptions : SearchOptions {
  std::uint64_t max_subsets = 20'000'000;
  // Skip reticulation sets that admit no system of distinct representatives
  // for the minimal cycle basis. Off by default.
  bool matching_pruning = false;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Outcome exact_c_orientation(const UndirectedNetwork& n, const ClassPredicate& cls, const SearchOptions& options = {});
Outcome tree_child_heuristic(const UndirectedNetwork& n, const SearchOptions& options = {});
// Throws BudgetExceeded when C(|V| - |X|, r) exceeds options.max_subsets.
Outcome baseline_c_orientation(const UndirectedNetwork& n, const ClassPredicate& cls,
                               const BaselineOptions& options = {});

// True iff the containment graph (basis cycles x reticulations) has a perfect matching.
bool placement_admissible(const CycleBasis& b, std::span<const Vertex> reticulations);

// Sum of pairwise distances of the placement.
std::uint64_t placement_objective(const DistanceMatrix& dist, std::span<const Vertex> placement);

// Tuples (v_1, ..., v_r) in V(C_1) x ... x V(C_r) whose entries are pairwise at
// distance >= 2, restricted to those maximising placement_objective, in
// lexicographic order.
struct MaximalPlacements {
  std::vector<std::vector<Vertex>> placements;
  std::uint64_t objective = 0;
  bool timed_out = false;  // deadline passed; placements are incomplete
};
MaximalPlacements maximizing_placements(const UndirectedNetwork& n, const CycleBasis& b, const DistanceMatrix& dist,
                                        std::optional<std::chrono::steady_clock::time_point> deadline = {});

// Candidate vertices of each basis cycle in ascending order.
std::vector<std::vector<Vertex>> cycle_candidates(const CycleBasis& b);

// Post-hoc check of a returned orientation: valid and acyclic, reticulations as
// placed, accepted by the class, and root suppression gives back the input.
// Returns an empty string when everything holds, else a description.
std::string check_orientation(const UndirectedNetwork& n, const Outcome& outcome, const ClassPredicate& cls);

}  // namespace orient
