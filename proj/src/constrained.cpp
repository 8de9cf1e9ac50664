#include "orient/constrained.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace orient {

void check_constraint(const UndirectedNetwork& n, const OrientationConstraint& c) {
  if (!n.edge_index(c.root_edge.u, c.root_edge.v)) throw std::invalid_argument("root edge is not an edge of the network");
  auto vr = c.reticulations;
  std::sort(vr.begin(), vr.end());
  if (std::adjacent_find(vr.begin(), vr.end()) != vr.end()) throw std::invalid_argument("duplicate reticulation");
  if (vr.size() != reticulation_number(n))
    throw std::invalid_argument("need exactly r = " + std::to_string(reticulation_number(n)) + " reticulations, got " +
                                std::to_string(vr.size()));
  for (auto v : vr) {
    if (v >= n.vertex_count()) throw std::invalid_argument("reticulation out of range");
    if (n.is_leaf(v)) throw std::invalid_argument("leaf '" + n.name(v) + "' cannot be a reticulation");
  }
}

namespace {

std::vector<std::uint8_t> indegree_map(const UndirectedNetwork& n, const OrientationConstraint& c) {
  std::vector<std::uint8_t> indeg(n.vertex_count(), 1);
  for (auto v : c.reticulations) indeg[v] = 2;
  return indeg;
}

}  // namespace

ConstrainedOrienter::ConstrainedOrienter(const UndirectedNetwork& n)
    : net_(&n),
      direction_(n.edge_count(), 0),
      in_(n.vertex_count()),
      out_(n.vertex_count()),
      open_(n.vertex_count()),
      want_in_(n.vertex_count()),
      want_out_(n.vertex_count()),
      queued_(n.vertex_count(), 0) {
  queue_.reserve(n.vertex_count());
}

void ConstrainedOrienter::orient(std::size_t edge, Vertex from) {
  const auto& e = net_->edge(edge);
  const auto to = e.other(from);
  direction_[edge] = from == e.u ? 1 : -1;
  ++out_[from];
  ++in_[to];
  --open_[from];
  --open_[to];
  ++stats_.edges_oriented;
  if (!queued_[to]) {
    queued_[to] = 1;
    queue_.push_back(to);
  }
}

bool ConstrainedOrienter::run(std::size_t root_edge, std::span<const std::uint8_t> indegree) {
  const auto& n = *net_;
  const auto vertices = n.vertex_count();
  root_edge_ = root_edge;
  stats_ = {};
  std::fill(direction_.begin(), direction_.end(), 0);
  queue_.clear();
  for (Vertex v = 0; v < vertices; ++v) {
    in_[v] = 0;
    out_[v] = 0;
    open_[v] = static_cast<std::uint8_t>(n.degree(v));
    want_in_[v] = indegree[v];
    want_out_[v] = static_cast<std::uint8_t>(n.degree(v) - indegree[v]);
    queued_[v] = 1;
    queue_.push_back(v);
  }
  // The root replaces the root edge with two out-arcs.
  const auto& re = n.edge(root_edge);
  for (auto v : {re.u, re.v}) {
    ++in_[v];
    --open_[v];
  }

  // Work list of vertices whose counters changed; a vertex forces all of its
  // open edges once either its in-arcs or its out-arcs are complete.
  std::size_t head = 0;
  while (head < queue_.size()) {
    const auto v = queue_[head++];
    queued_[v] = 0;
    ++stats_.propagation_steps;
    if (in_[v] > want_in_[v] || out_[v] > want_out_[v]) return false;
    if (open_[v] == 0) continue;
    const bool push_out = in_[v] == want_in_[v];
    const bool pull_in = out_[v] == want_out_[v];
    if (!push_out && !pull_in) continue;
    for (auto edge : n.incident_edges(v)) {
      if (edge == root_edge || direction_[edge] != 0) continue;
      orient(edge, push_out ? v : n.edge(edge).other(v));
    }
    if (!queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
    // Compact the consumed prefix so the buffer stays O(|V| + |E|).
    if (head > vertices) {
      queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }

  for (Vertex v = 0; v < vertices; ++v)
    if (open_[v] != 0 || in_[v] != want_in_[v] || out_[v] != want_out_[v]) return false;

  // Propagation alone does not rule out a directed cycle; check explicitly.
  std::vector<Arc> arcs;
  arcs.reserve(n.edge_count() + 1);
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    if (i == root_edge) continue;
    const auto& e = n.edge(i);
    arcs.push_back(direction_[i] > 0 ? Arc{e.u, e.v} : Arc{e.v, e.u});
  }
  const auto root = static_cast<Vertex>(vertices);
  arcs.push_back({root, re.u});
  arcs.push_back({root, re.v});
  return is_acyclic(vertices + 1, arcs);
}

namespace {

DirectedNetwork orientation_parts(const UndirectedNetwork& n, std::size_t root_edge,
                                  std::span<const std::int8_t> directions, bool validate) {
  std::vector<std::string> names, labels;
  names.reserve(n.vertex_count() + 1);
  labels.reserve(n.vertex_count() + 1);
  for (Vertex v = 0; v < n.vertex_count(); ++v) {
    names.push_back(n.name(v));
    labels.push_back(n.label(v));
  }
  const auto root = static_cast<Vertex>(n.vertex_count());
  names.emplace_back(kRootName);
  labels.emplace_back();

  std::vector<Arc> arcs;
  arcs.reserve(n.edge_count() + 1);
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    const auto& e = n.edge(i);
    if (i == root_edge) {
      arcs.push_back({root, e.u});
      arcs.push_back({root, e.v});
    } else {
      arcs.push_back(directions[i] > 0 ? Arc{e.u, e.v} : Arc{e.v, e.u});
    }
  }
  if (!validate) return DirectedNetwork::assemble(std::move(names), std::move(labels), std::move(arcs));
  return DirectedNetwork::build(std::move(names), std::move(labels), std::move(arcs));
}

}  // namespace

// run() has already matched every in-degree and checked acyclicity.
DirectedNetwork ConstrainedOrienter::materialize() const {
  return orientation_parts(*net_, root_edge_, direction_, false);
}

DirectedNetwork build_orientation(const UndirectedNetwork& n, std::size_t root_edge,
                                  std::span<const std::int8_t> directions) {
  return orientation_parts(n, root_edge, directions, true);
}

ConstrainedResult orient_constrained(const UndirectedNetwork& n, const OrientationConstraint& c) {
  check_constraint(n, c);
  ConstrainedOrienter orienter(n);
  const auto indeg = indegree_map(n, c);
  ConstrainedResult result;
  if (orienter.run(*n.edge_index(c.root_edge.u, c.root_edge.v), indeg)) result.network = orienter.materialize();
  result.stats = orienter.stats();
  return result;
}

std::vector<DirectedNetwork> orient_exhaustive_oracle(const UndirectedNetwork& n, const OrientationConstraint& c,
                                                      std::size_t max_edges) {
  if (n.edge_count() > max_edges)
    throw std::length_error("exhaustive oracle limited to " + std::to_string(max_edges) + " edges, network has " +
                            std::to_string(n.edge_count()));
  check_constraint(n, c);
  const auto root_edge = *n.edge_index(c.root_edge.u, c.root_edge.v);
  const auto want = indegree_map(n, c);
  const auto vertices = n.vertex_count();

  std::vector<int> in(vertices, 0), remaining(vertices, 0);
  for (std::size_t i = 0; i < n.edge_count(); ++i) {
    if (i == root_edge) continue;
    ++remaining[n.edge(i).u];
    ++remaining[n.edge(i).v];
  }
  in[c.root_edge.u] = 1;
  in[c.root_edge.v] = 1;

  std::vector<std::int8_t> dir(n.edge_count(), 0);
  std::vector<DirectedNetwork> found;
  // A partial assignment is abandoned only when some in-degree already exceeds
  // its target or can no longer reach it; every complete assignment that
  // survives is checked for acyclicity.
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == n.edge_count()) {
      for (Vertex v = 0; v < vertices; ++v)
        if (in[v] != want[v]) return;
      std::vector<Arc> arcs;
      const auto root = static_cast<Vertex>(vertices);
      for (std::size_t k = 0; k < n.edge_count(); ++k) {
        const auto& e = n.edge(k);
        if (k == root_edge) {
          arcs.push_back({root, e.u});
          arcs.push_back({root, e.v});
        } else {
          arcs.push_back(dir[k] > 0 ? Arc{e.u, e.v} : Arc{e.v, e.u});
        }
      }
      if (is_acyclic(vertices + 1, arcs)) found.push_back(build_orientation(n, root_edge, dir));
      return;
    }
    if (i == root_edge) {
      assign(i + 1);
      return;
    }
    const auto& e = n.edge(i);
    --remaining[e.u];
    --remaining[e.v];
    for (std::int8_t d : {std::int8_t{1}, std::int8_t{-1}}) {
      const auto head = d > 0 ? e.v : e.u;
      const auto tail = e.other(head);
      ++in[head];
      dir[i] = d;
      const bool viable = in[head] <= want[head] && in[tail] + remaining[tail] >= want[tail] &&
                          in[head] + remaining[head] >= want[head];
      if (viable) assign(i + 1);
      --in[head];
    }
    dir[i] = 0;
    ++remaining[e.u];
    ++remaining[e.v];
  };
  assign(0);
  return found;
}

}  // namespace orient
