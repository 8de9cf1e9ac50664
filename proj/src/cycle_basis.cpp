#include "orient/cycle_basis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>

namespace orient {

bool Cycle::contains(Vertex v) const { return std::find(vertices.begin(), vertices.end(), v) != vertices.end(); }

std::size_t CycleBasis::max_length() const {
  std::size_t best = 0;
  for (const auto& c : cycles) best = std::max(best, c.length());
  return best;
}

namespace {

bool cycle_less(const Cycle& a, const Cycle& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.edges < b.edges;
}

struct SpanningTree {
  std::vector<std::size_t> parent_edge;  // npos for the root
  std::vector<std::uint32_t> depth;
  std::vector<Gf2Vector> root_path;      // edges on the tree path to the root
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

std::vector<std::vector<std::pair<Vertex, std::size_t>>> adjacency(GraphView g) {
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].u].emplace_back(g.edges[i].v, i);
    adj[g.edges[i].v].emplace_back(g.edges[i].u, i);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

SpanningTree bfs_tree(GraphView g, const std::vector<std::vector<std::pair<Vertex, std::size_t>>>& adj, Vertex root) {
  SpanningTree t;
  t.parent_edge.assign(g.vertex_count, kNone);
  t.depth.assign(g.vertex_count, std::numeric_limits<std::uint32_t>::max());
  t.root_path.assign(g.vertex_count, Gf2Vector(g.edges.size()));
  std::deque<Vertex> queue{root};
  t.depth[root] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& [w, edge] : adj[v]) {
      if (t.depth[w] != std::numeric_limits<std::uint32_t>::max()) continue;
      t.depth[w] = t.depth[v] + 1;
      t.parent_edge[w] = edge;
      t.root_path[w] = t.root_path[v];
      t.root_path[w].set(edge);
      queue.push_back(w);
    }
  }
  return t;
}

std::size_t cycle_rank(GraphView g) {
  // Assumes g is connected.
  return g.edges.size() + 1 - g.vertex_count;
}

}  // namespace

std::optional<Cycle> cycle_from_bits(GraphView g, const Gf2Vector& bits) {
  const auto edges = bits.ones();
  if (edges.size() < 3) return std::nullopt;
  std::vector<std::vector<Vertex>> nb(g.vertex_count);
  for (auto i : edges) {
    nb[g.edges[i].u].push_back(g.edges[i].v);
    nb[g.edges[i].v].push_back(g.edges[i].u);
  }
  Vertex start = std::numeric_limits<Vertex>::max();
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (nb[v].empty()) continue;
    if (nb[v].size() != 2) return std::nullopt;
    if (start == std::numeric_limits<Vertex>::max()) start = v;
  }
  Cycle c;
  c.edges = edges;
  c.bits = bits;
  // Walk from the smallest vertex towards its smaller neighbour.
  Vertex prev = start;
  Vertex cur = std::min(nb[start][0], nb[start][1]);
  c.vertices.push_back(start);
  while (cur != start) {
    c.vertices.push_back(cur);
    const auto next = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
    prev = cur;
    cur = next;
    if (c.vertices.size() > edges.size()) return std::nullopt;
  }
  if (c.vertices.size() != edges.size()) return std::nullopt;  // more than one component
  return c;
}

std::vector<Cycle> horton_candidates(GraphView g) {
  const auto adj = adjacency(g);
  std::vector<Cycle> out;
  for (Vertex x = 0; x < g.vertex_count; ++x) {
    const auto t = bfs_tree(g, adj, x);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      if (t.parent_edge[e.u] == i || t.parent_edge[e.v] == i) continue;
      const auto length = static_cast<std::size_t>(t.depth[e.u]) + t.depth[e.v] + 1;
      auto bits = t.root_path[e.u] ^ t.root_path[e.v];
      bits.set(i);
      // Equal popcount means the two tree paths meet only at x.
      if (bits.count() != length) continue;
      if (auto c = cycle_from_bits(g, bits)) out.push_back(std::move(*c));
    }
  }
  std::sort(out.begin(), out.end(), cycle_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Gf2Vector> fundamental_cycles(GraphView g) {
  const auto adj = adjacency(g);
  const auto t = bfs_tree(g, adj, 0);
  std::vector<Gf2Vector> out;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (t.parent_edge[e.u] == i || t.parent_edge[e.v] == i) continue;
    auto bits = t.root_path[e.u] ^ t.root_path[e.v];
    bits.set(i);
    out.push_back(std::move(bits));
  }
  return out;
}

std::vector<Cycle> enumerate_simple_cycles(GraphView g, std::size_t max_rank) {
  const auto basis = fundamental_cycles(g);
  const auto r = basis.size();
  if (r > max_rank) throw std::length_error("cycle space too large to enumerate (rank " + std::to_string(r) + ")");
  std::vector<Cycle> out;
  Gf2Vector current(g.edges.size());
  // Gray-code walk over all 2^r - 1 non-empty elements of the cycle space.
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << r); ++k) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(k));
    current ^= basis[flip];
    if (auto c = cycle_from_bits(g, current)) out.push_back(std::move(*c));
  }
  std::sort(out.begin(), out.end(), cycle_less);
  return out;
}

CycleBasis minimal_cycle_basis(const UndirectedNetwork& n) { return minimal_cycle_basis(n.view()); }

CycleBasis minimal_cycle_basis(GraphView g) {
  const auto r = cycle_rank(g);
  if (r == 0) throw std::invalid_argument("input is a tree");

  // Witnesses start as unit vectors on the non-tree edges of a spanning tree.
  const auto adj = adjacency(g);
  const auto tree = bfs_tree(g, adj, 0);
  std::vector<Gf2Vector> witness;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (tree.parent_edge[e.u] == i || tree.parent_edge[e.v] == i) continue;
    Gf2Vector w(g.edges.size());
    w.set(i);
    witness.push_back(std::move(w));
  }

  const auto candidates = horton_candidates(g);
  CycleBasis basis;
  for (std::size_t i = 0; i < r; ++i) {
    auto it = std::find_if(candidates.begin(), candidates.end(),
                           [&](const Cycle& c) { return c.bits.dot(witness[i]); });
    if (it == candidates.end()) throw std::logic_error("no candidate cycle for witness");
    basis.cycles.push_back(*it);
    basis.total_length += it->length();
    for (std::size_t j = i + 1; j < r; ++j)
      if (it->bits.dot(witness[j])) witness[j] ^= witness[i];
  }
  return basis;
}

CycleBasis make_basis(GraphView g, const std::vector<Gf2Vector>& cycles) {
  CycleBasis basis;
  for (const auto& bits : cycles) {
    auto c = cycle_from_bits(g, bits);
    if (!c) throw std::invalid_argument("not a simple cycle");
    basis.total_length += c->length();
    basis.cycles.push_back(std::move(*c));
  }
  return basis;
}

namespace {

template <typename Visit>
void for_each_basis(const std::vector<Cycle>& cycles, std::size_t r, Visit&& visit) {
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, const Gf2Eliminator&, std::size_t)> pick =
      [&](std::size_t from, const Gf2Eliminator& elim, std::size_t length) {
        if (chosen.size() == r) {
          visit(chosen, length);
          return;
        }
        for (std::size_t k = from; k + (r - chosen.size()) <= cycles.size(); ++k) {
          auto next = elim;
          if (!next.insert(cycles[k].bits)) continue;  // dependent prefixes never complete
          chosen.push_back(k);
          pick(k + 1, next, length + cycles[k].length());
          chosen.pop_back();
        }
      };
  pick(0, Gf2Eliminator{}, 0);
}

}  // namespace

std::size_t exhaustive_minimum_basis_length(GraphView g) {
  const auto cycles = enumerate_simple_cycles(g);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for_each_basis(cycles, cycle_rank(g), [&](const std::vector<std::size_t>&, std::size_t length) {
    best = std::min(best, length);
  });
  return best;
}

std::vector<std::vector<std::size_t>> enumerate_minimum_bases(GraphView g, const std::vector<Cycle>& cycles) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> out;
  for_each_basis(cycles, cycle_rank(g), [&](const std::vector<std::size_t>& chosen, std::size_t length) {
    if (length < best) {
      best = length;
      out.clear();
    }
    if (length == best) out.push_back(chosen);
  });
  return out;
}

std::size_t horton_minimum_basis_length(GraphView g) {
  const auto r = cycle_rank(g);
  Gf2Eliminator elim;
  std::size_t total = 0;
  for (const auto& c : horton_candidates(g)) {
    if (elim.rank() == r) break;
    if (elim.insert(c.bits)) total += c.length();
  }
  return total;
}

BasisReport verify_cycle_basis(const UndirectedNetwork& n, const CycleBasis& b) {
  const auto g = n.view();
  BasisReport report;
  report.expected_rank = reticulation_number(n);

  std::size_t total = 0;
  for (std::size_t i = 0; i < b.cycles.size(); ++i) {
    const auto& c = b.cycles[i];
    total += c.length();
    auto rebuilt = cycle_from_bits(g, c.bits);
    if (!rebuilt || rebuilt->edges != c.edges) {
      report.simple_cycles = false;
      report.problems.push_back("cycle " + std::to_string(i) + " is not a simple cycle of the network");
    }
  }
  report.total_length = total;
  if (total != b.total_length) report.problems.push_back("stored total_length does not match the cycles");

  Gf2Eliminator elim;
  for (const auto& c : b.cycles) elim.insert(c.bits);
  report.rank = elim.rank();
  if (report.rank != b.cycles.size() || b.cycles.size() != report.expected_rank) {
    report.independent = false;
    report.problems.push_back("GF(2) rank " + std::to_string(report.rank) + " for " + std::to_string(b.cycles.size()) +
                              " cycles, expected " + std::to_string(report.expected_rank));
  }
  for (const auto& f : fundamental_cycles(g))
    if (!elim.in_span(f)) {
      report.spans = false;
      report.problems.push_back("a fundamental cycle is outside the span of the basis");
      break;
    }

  if (n.edge_count() <= kExhaustiveBasisEdgeLimit) {
    report.minimality_method = "exhaustive";
    report.optimum_length = exhaustive_minimum_basis_length(g);
  } else {
    report.minimality_method = "horton";
    report.optimum_length = horton_minimum_basis_length(g);
  }
  if (total != report.optimum_length) {
    report.minimal = false;
    report.problems.push_back("total length " + std::to_string(total) + " exceeds the minimum " +
                              std::to_string(report.optimum_length));
  }
  return report;
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t search_space_size(const CycleBasis& b) {
  std::uint64_t product = 1;
  for (const auto& c : b.cycles) product = saturating_mul(product, c.vertices.size());
  return product;
}

std::uint64_t baseline_space_size(const UndirectedNetwork& n) {
  return binomial(n.vertex_count() - n.leaf_count(), reticulation_number(n));
}

}  // namespace orient
