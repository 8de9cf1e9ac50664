#include "doctest.h"
#include "orient/io.hpp"
#include "orient/network.hpp"
#include "support.hpp"

using namespace orient;
using orient::test::triangle;

namespace {

RawGraph raw(std::vector<std::pair<std::string, std::string>> leaves,
             std::vector<std::pair<std::string, std::string>> edges) {
  return RawGraph{std::move(leaves), std::move(edges)};
}

// rho -> a, rho -> x1, a -> b, a -> c, c -> b, b -> x2, c -> x3
DirectedNetwork oriented_triangle() {
  return parse_directed(
      "root r\nleaf x1 x1\nleaf x2 x2\nleaf x3 x3\n"
      "arc r a\narc r x1\narc a b\narc a c\narc c b\narc b x2\narc c x3\n");
}

}  // namespace

TEST_CASE("validate_undirected accepts the triangle network") {
  auto g = raw({{"x1", "x1"}, {"x2", "x2"}, {"x3", "x3"}},
               {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "x1"}, {"b", "x2"}, {"c", "x3"}});
  CHECK(validate_undirected(g).ok());
}

TEST_CASE("the two-leaf single edge is a valid tree") {
  auto g = raw({{"a", "x1"}, {"b", "x2"}}, {{"a", "b"}});
  CHECK(validate_undirected(g).ok());
  auto n = UndirectedNetwork::from_raw(g);
  CHECK(reticulation_number(n) == 0);
  CHECK(n.leaf_count() == 2);
}

TEST_CASE("degree violations name the offending vertices") {
  auto report = validate_undirected(raw({{"x1", "x1"}}, {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"a", "x1"}}));
  CHECK_FALSE(report.ok());
  CHECK(report.has("degree"));
  std::vector<std::string> subjects;
  for (const auto& v : report.violations)
    if (v.rule == "degree") subjects.push_back(v.subject);
  std::sort(subjects.begin(), subjects.end());
  CHECK(subjects == std::vector<std::string>{"b", "c"});
  CHECK_THROWS_AS(UndirectedNetwork::from_raw(raw({{"x1", "x1"}}, {{"a", "b"}})), NetworkError);
}

TEST_CASE("structural rules") {
  CHECK(validate_undirected(raw({{"x", "1"}, {"y", "2"}}, {{"x", "x"}})).has("loop"));
  CHECK(validate_undirected(raw({{"x", "1"}, {"y", "2"}}, {{"x", "y"}, {"y", "x"}})).has("parallel-edge"));
  CHECK(validate_undirected(raw({{"x", "1"}}, {{"x", "a"}, {"a", "y"}, {"a", "z"}, {"y", "q"}})).has("unlabeled-leaf"));
  CHECK(validate_undirected(raw({{"x", "1"}, {"y", "1"}}, {{"x", "y"}})).has("duplicate-label"));
  CHECK(validate_undirected(raw({{"x", "1"}}, {})).has("too-few-leaves"));
  CHECK(validate_undirected(raw({{"a", "1"}, {"b", "2"}, {"c", "3"}, {"d", "4"}}, {{"a", "b"}, {"c", "d"}}))
            .has("disconnected"));
}

TEST_CASE("reticulation number") {
  CHECK(reticulation_number(triangle()) == 1);
  CHECK(reticulation_number(test::fixture("two_triangles.txt")) == 2);
  for (std::size_t k : {3, 4, 7, 12}) {
    auto t = test::caterpillar(k);
    CHECK(reticulation_number(t) == 0);
    CHECK(t.vertex_count() == 2 * k - 2);
    CHECK(t.edge_count() == 2 * k - 3);
  }
}

TEST_CASE("distances") {
  auto n = triangle();
  auto v = [&](const char* s) { return test::vid(n, s); };
  CHECK(distance(n, v("a"), v("a")) == 0);
  CHECK(distance(n, v("a"), v("c")) == 1);
  CHECK(distance(n, v("x1"), v("x2")) == 3);
  DistanceMatrix d(n);
  for (Vertex a = 0; a < n.vertex_count(); ++a)
    for (Vertex b = 0; b < n.vertex_count(); ++b) CHECK(d(a, b) == distance(n, a, b));
}

TEST_CASE("tree-child predicate") {
  auto d = oriented_triangle();
  CHECK(is_tree_child(d));
  CHECK_FALSE(has_tree_child_forbidden_subgraph(d));
  CHECK(d.reticulations().size() == 1);
  CHECK(d.name(d.reticulations()[0]) == "b");

  // v has two reticulation children p and q.
  auto bad = parse_directed(
      "root r\nleaf l1 1\nleaf l2 2\nleaf l3 3\n"
      "arc r u\narc r w\narc u v\narc u p\narc v p\narc v q\narc w q\narc w l3\narc p l1\narc q l2\n");
  CHECK(has_tree_child_forbidden_subgraph(bad));
  CHECK_FALSE(is_tree_child(bad));
  CHECK(is_stack_free(bad));

  auto tree = parse_directed("root r\nleaf a 1\nleaf b 2\nleaf c 3\narc r a\narc r s\narc s b\narc s c\n");
  CHECK(is_tree_child(tree));
  CHECK(is_stack_free(tree));
}

TEST_CASE("stacked reticulations") {
  // q is a reticulation whose only child p is a reticulation.
  auto d = parse_directed(
      "root r\nleaf l1 1\nleaf l2 2\nleaf l3 3\n"
      "arc r u\narc r w\narc u q\narc u t\narc w q\narc w l1\narc q p\narc t p\narc t l2\narc p l3\n");
  CHECK_FALSE(is_stack_free(d));
  CHECK_FALSE(is_tree_child(d));
  CHECK(has_tree_child_forbidden_subgraph(d));
  CHECK(d.kind(d.find("q").value()) == VertexKind::Reticulation);
  CHECK(d.kind(d.root()) == VertexKind::Root);
  CHECK(d.kind(d.find("t").value()) == VertexKind::Tree);
  CHECK(d.kind(d.find("l1").value()) == VertexKind::Leaf);
}

TEST_CASE("directed validation") {
  std::vector<std::string> names{"r", "a", "b"}, labels{"", "1", "2"};
  CHECK(validate_directed(names, labels, std::vector<Arc>{{0, 1}, {0, 2}}).ok());
  CHECK_FALSE(validate_directed(names, labels, std::vector<Arc>{{0, 1}}).ok());
  CHECK_THROWS_AS(DirectedNetwork::build(names, labels, {{0, 1}, {1, 2}}), NetworkError);
  // directed 3-cycle hanging below a root
  std::vector<std::string> n2{"r", "a", "b", "c", "x", "y", "z"}, l2{"", "", "", "", "1", "2", "3"};
  CHECK_FALSE(validate_directed(n2, l2, std::vector<Arc>{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 1}, {2, 5}, {3, 6}}).ok());
}

TEST_CASE("acyclicity") {
  CHECK(is_acyclic(3, std::vector<Arc>{{0, 1}, {1, 2}}));
  CHECK_FALSE(is_acyclic(3, std::vector<Arc>{{0, 1}, {1, 2}, {2, 0}}));
  CHECK(is_acyclic(1, std::vector<Arc>{}));
}

TEST_CASE("suppress_root") {
  auto d = oriented_triangle();
  auto n = suppress_root(d);
  CHECK(n == triangle());

  auto cherry = parse_directed("root r\nleaf x1 x1\nleaf x2 x2\narc r x1\narc r x2\n");
  auto edge = suppress_root(cherry);
  CHECK(edge.edge_count() == 1);
  CHECK(edge.vertex_count() == 2);

  // the root's children u and w are adjacent
  auto adjacent = parse_directed(
      "root r\nleaf l1 1\nleaf l2 2\nleaf l3 3\n"
      "arc r u\narc r w\narc u w\narc u l1\narc w t\narc t l2\narc t l3\n");
  CHECK_THROWS_AS(suppress_root(adjacent), NetworkError);
}

TEST_CASE("underlying edges keep the root") {
  auto d = oriented_triangle();
  auto e = underlying_edges(d);
  CHECK(e.size() == d.arcs().size());
  CHECK(std::is_sorted(e.begin(), e.end()));
}

TEST_CASE("label-preserving isomorphism") {
  auto a = triangle();
  // same shape, different internal ids
  auto b = parse_network(
      "leaf p x1\nleaf q x2\nleaf s x3\nedge m n\nedge n o\nedge m o\nedge m p\nedge n q\nedge o s\n");
  CHECK(isomorphic(a, b));
  CHECK(exactly_isomorphic(a, b));
  CHECK(fingerprint(a) == fingerprint(b));

  auto c = test::fixture("two_triangles.txt");
  auto d = test::fixture("triangle_square.txt");
  CHECK_FALSE(isomorphic(a, c));
  CHECK_FALSE(isomorphic(c, d));

  // same shape but labels swapped between a tree's cherries
  auto t1 = parse_network("leaf a 1\nleaf b 2\nleaf c 3\nleaf d 4\nedge a u\nedge b u\nedge u v\nedge c v\nedge d v\n");
  auto t2 = parse_network("leaf a 1\nleaf b 3\nleaf c 2\nleaf d 4\nedge a u\nedge b u\nedge u v\nedge c v\nedge d v\n");
  CHECK_FALSE(exactly_isomorphic(t1, t2));
  CHECK(fingerprint(t1) != fingerprint(t2));
}

TEST_CASE("degree identities on generated networks") {
  for (const auto& e : test::generated(12, 0.2, 1, 50)) {
    const auto& n = e.network;
    const auto r = reticulation_number(n);
    CHECK(n.vertex_count() == 2 * n.leaf_count() + 2 * r - 2);
    CHECK(n.edge_count() == 2 * n.leaf_count() + 3 * r - 3);
  }
}
