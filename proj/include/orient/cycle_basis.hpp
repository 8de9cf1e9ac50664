#pragma once

// Minimum-weight cycle bases.
//
// Cycles are stored as incidence vectors over the network's edge indexing.
// minimal_cycle_basis() follows de Pina's scheme: keep r witness vectors
// spanning the orthogonal complement of the cycles chosen so far, and at step i
// take the shortest cycle with odd intersection with witness i. The shortest
// such cycle is always a Horton candidate (a cycle P(x,a) + {a,b} + P(b,x)
// over shortest-path trees), so candidates are drawn from that set in
// (length, sorted edge list) order, which also fixes the tie-breaking.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orient/gf2.hpp"
#include "orient/network.hpp"

namespace orient {

struct Cycle {
  std::vector<std::size_t> edges;  // sorted edge indices
  std::vector<Vertex> vertices;    // cyclic order, starting at the smallest vertex
  Gf2Vector bits;

  std::size_t length() const { return edges.size(); }
  bool contains(Vertex v) const;
  friend bool operator==(const Cycle& a, const Cycle& b) { return a.bits == b.bits; }
};

struct CycleBasis {
  std::vector<Cycle> cycles;
  std::size_t total_length = 0;

  std::size_t size() const { return cycles.size(); }
  std::size_t max_length() const;
};

// Returns nullopt unless `bits` is the edge set of a single simple cycle.
std::optional<Cycle> cycle_from_bits(GraphView g, const Gf2Vector& bits);

// Deduplicated Horton candidates sorted by (length, sorted edge list).
std::vector<Cycle> horton_candidates(GraphView g);

// Fundamental cycles of the breadth-first spanning tree rooted at vertex 0.
std::vector<Gf2Vector> fundamental_cycles(GraphView g);

// Every simple cycle, obtained by enumerating the cycle space. Throws
// std::length_error when the cycle rank exceeds `max_rank`.
std::vector<Cycle> enumerate_simple_cycles(GraphView g, std::size_t max_rank = 20);

// Throws std::invalid_argument for trees (r = 0).
CycleBasis minimal_cycle_basis(const UndirectedNetwork& n);
CycleBasis minimal_cycle_basis(GraphView g);

// Builds a CycleBasis from explicit cycles (used to check hand-made bases).
CycleBasis make_basis(GraphView g, const std::vector<Gf2Vector>& cycles);

struct BasisReport {
  bool simple_cycles = true;
  bool independent = true;
  bool spans = true;
  bool minimal = true;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  std::size_t total_length = 0;
  std::size_t optimum_length = 0;
  std::string minimality_method;  // "exhaustive" or "horton"
  std::vector<std::string> problems;

  bool ok() const { return simple_cycles && independent && spans && minimal; }
};

inline constexpr std::size_t kExhaustiveBasisEdgeLimit = 16;

// Checks cycle validity, GF(2) rank, spanning and minimality. Minimality is
// certified against enumeration of all bases when |E| <= 16, otherwise against
// Horton's greedy optimum.
BasisReport verify_cycle_basis(const UndirectedNetwork& n, const CycleBasis& b);

// Minimum total length over all bases by enumerating every r-subset of simple cycles.
std::size_t exhaustive_minimum_basis_length(GraphView g);
// Every minimum-weight basis, as index lists into enumerate_simple_cycles(g).
std::vector<std::vector<std::size_t>> enumerate_minimum_bases(GraphView g, const std::vector<Cycle>& cycles);
// Minimum total length via Horton's greedy selection.
std::size_t horton_minimum_basis_length(GraphView g);

// Placements examined by the cycle-basis search: product of |V(C_i)|. Saturates.
std::uint64_t search_space_size(const CycleBasis& b);
// Reticulation sets examined by brute force: C(|V| - |X|, r). Saturates.
std::uint64_t baseline_space_size(const UndirectedNetwork& n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace orient
