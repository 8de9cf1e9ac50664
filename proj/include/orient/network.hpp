#pragma once

// Graph data model for undirected and rooted binary phylogenetic networks.
//
// Vertices are addressed by dense indices (`Vertex`). An UndirectedNetwork
// orders its vertices by their string id and its edges by (u, v) index pairs,
// so two networks read from the same file always get the same indexing. All
// algorithms that enumerate "in lexicographic order" refer to this indexing.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orient {

using Vertex = std::uint32_t;

// Undirected edge with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct Arc {
  Vertex from = 0;
  Vertex to = 0;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Plain simple-graph view used by the cycle-space routines, which also run on
// graphs that are not phylogenetic networks (e.g. underlying graphs with a root).
struct GraphView {
  std::size_t vertex_count = 0;
  std::span<const Edge> edges;
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Graph exactly as read from a file or produced by a generator, before any checks.
struct RawGraph {
  std::vector<std::pair<std::string, std::string>> leaves;  // (vertex id, taxon label)
  std::vector<std::pair<std::string, std::string>> edges;
};

struct Violation {
  std::string rule;     // short rule name, e.g. "degree", "disconnected"
  std::string subject;  // offending vertex or edge
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view rule) const;
  std::string to_string() const;
};

ValidationReport validate_undirected(const RawGraph& g);

class UndirectedNetwork {
 public:
  // Throws NetworkError carrying the validation report when `g` is not a valid
  // undirected binary phylogenetic network.
  static UndirectedNetwork from_raw(const RawGraph& g);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t leaf_count() const { return leaf_count_; }

  const std::string& name(Vertex v) const { return names_[v]; }
  const std::string& label(Vertex v) const { return labels_[v]; }  // empty for internal vertices
  bool is_leaf(Vertex v) const { return !labels_[v].empty(); }
  std::optional<Vertex> find(std::string_view id) const;

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::span<const std::size_t> incident_edges(Vertex v) const { return incidence_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;

  std::vector<Vertex> internal_vertices() const;
  GraphView view() const { return {vertex_count(), edges_}; }
  RawGraph to_raw() const;

  friend bool operator==(const UndirectedNetwork& a, const UndirectedNetwork& b) {
    return a.names_ == b.names_ && a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::unordered_map<std::string, Vertex> index_;
  std::size_t leaf_count_ = 0;
};

// r = |E| - |V| + 1.
std::size_t reticulation_number(const UndirectedNetwork& n);

// Breadth-first distances from `source` to every vertex.
std::vector<std::uint32_t> bfs_distances(const UndirectedNetwork& n, Vertex source);
std::uint32_t distance(const UndirectedNetwork& n, Vertex u, Vertex v);

class DistanceMatrix {
 public:
  explicit DistanceMatrix(const UndirectedNetwork& n);
  std::uint32_t operator()(Vertex u, Vertex v) const { return data_[u * size_ + v]; }

 private:
  std::size_t size_;
  std::vector<std::uint32_t> data_;
};

enum class VertexKind { Root, Tree, Reticulation, Leaf };

// Rooted, acyclic, binary phylogenetic network. Immutable once built.
class DirectedNetwork {
 public:
  // `labels[v]` is the taxon label of leaf v and empty otherwise. Throws
  // NetworkError when the arcs do not form a directed binary phylogenetic network.
  static DirectedNetwork build(std::vector<std::string> names, std::vector<std::string> labels,
                               std::vector<Arc> arcs);
  // Same as build() without validation, for callers whose output is valid by
  // construction (the constrained orienter's search loop).
  static DirectedNetwork assemble(std::vector<std::string> names, std::vector<std::string> labels,
                                  std::vector<Arc> arcs);

  std::size_t vertex_count() const { return names_.size(); }
  const std::string& name(Vertex v) const { return names_[v]; }
  const std::string& label(Vertex v) const { return labels_[v]; }
  std::span<const std::string> names() const { return names_; }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view id) const;

  Vertex root() const { return root_; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  std::span<const Vertex> parents(Vertex v) const { return parents_[v]; }
  std::size_t indegree(Vertex v) const { return parents_[v].size(); }
  std::size_t outdegree(Vertex v) const { return children_[v].size(); }
  VertexKind kind(Vertex v) const;
  bool is_reticulation(Vertex v) const { return parents_[v].size() == 2; }
  std::vector<Vertex> reticulations() const;

  friend bool operator==(const DirectedNetwork& a, const DirectedNetwork& b) {
    return a.names_ == b.names_ && a.labels_ == b.labels_ && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;  // sorted
  std::vector<std::vector<Vertex>> children_;
  std::vector<std::vector<Vertex>> parents_;
  Vertex root_ = 0;
};

ValidationReport validate_directed(std::span<const std::string> names,
                                   std::span<const std::string> labels, std::span<const Arc> arcs);

bool is_acyclic(std::size_t vertex_count, std::span<const Arc> arcs);
inline bool is_acyclic(const DirectedNetwork& d) { return is_acyclic(d.vertex_count(), d.arcs()); }

// Every non-leaf vertex has a child that is not a reticulation.
bool is_tree_child(const DirectedNetwork& d);
// The two forbidden patterns: a vertex with two reticulation children, or a
// reticulation whose child is a reticulation. Absent iff is_tree_child().
bool has_tree_child_forbidden_subgraph(const DirectedNetwork& d);
// No reticulation has a reticulation child.
bool is_stack_free(const DirectedNetwork& d);

// Removes the root and joins its two children by an edge. Throws NetworkError
// when that would create a loop or a parallel edge.
UndirectedNetwork suppress_root(const DirectedNetwork& d);

// Underlying undirected graph (root kept) as an edge list over d's indexing.
std::vector<Edge> underlying_edges(const DirectedNetwork& d);

// Label-preserving isomorphism: leaves must correspond by taxon label, internal
// vertices are anonymous. Exact for up to kExactIsomorphismLimit vertices,
// otherwise compares fingerprints.
inline constexpr std::size_t kExactIsomorphismLimit = 20;
bool isomorphic(const UndirectedNetwork& a, const UndirectedNetwork& b);
bool exactly_isomorphic(const UndirectedNetwork& a, const UndirectedNetwork& b);
std::string fingerprint(const UndirectedNetwork& n);

}  // namespace orient
