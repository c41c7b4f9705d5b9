#include <doctest.h>

#include <sstream>

#include "nlsg/graph.hpp"

using namespace nlsg;

TEST_CASE("family constructors have the advertised shapes") {
  MetricGraph line = make_line();
  CHECK(line.num_vertices() == 1);
  CHECK(line.num_edges() == 2);
  CHECK(line.edge(0).is_halfline());
  CHECK(line.edge(1).is_halfline());

  MetricGraph s3 = make_star(3);
  CHECK(s3.num_vertices() == 1);
  CHECK(s3.num_edges() == 3);
  CHECK(s3.num_halflines() == 3);

  MetricGraph b2 = make_bridge(2, {1.0, 1.0});
  CHECK(b2.num_vertices() == 2);
  CHECK(b2.num_edges() == 4);
  CHECK(b2.degree(0) == 3);
  CHECK(b2.degree(1) == 3);

  MetricGraph s21 = make_star_2plus1(1.0);
  CHECK(s21.num_vertices() == 2);
  CHECK(s21.num_edges() == 3);
  CHECK(s21.num_halflines() == 2);
  CHECK(s21.degree(0) == 3);
  CHECK(s21.degree(1) == 1);

  MetricGraph e3 = make_exceptional_e3({0.5, 0.7, 0.3});
  CHECK(e3.num_vertices() == 3);
  CHECK(e3.num_edges() == 7);
  CHECK(e3.num_halflines() == 2);
  CHECK(e3.degree(2) == 4);  // pair + self-loop
}

TEST_CASE("constructor errors") {
  CHECK_THROWS(make_star(1));
  CHECK_THROWS(make_bridge(2, {1.0, -1.0}));
  CHECK_THROWS(make_bridge(2, {1.0}));
  CHECK_THROWS(make_star_2plus1(0.0));
  CHECK_THROWS(make_exceptional_e3({1.0, 1.0}));
  CHECK_THROWS(MetricGraph(1, {}));
  CHECK_THROWS(MetricGraph(1, {{0, 2, 1.0}}));
}

TEST_CASE("handshake identity across families") {
  auto handshake = [](const MetricGraph& g) {
    int total = 0;
    for (int v = 0; v < g.num_vertices(); ++v) total += g.degree(v);
    return total == 2 * g.num_finite_edges() + g.num_halflines();
  };
  CHECK(handshake(make_line()));
  CHECK(handshake(make_star(5)));
  CHECK(handshake(make_bridge(3, {1.0, 2.0, 0.5})));
  CHECK(handshake(make_star_2plus1(2.0)));
  CHECK(handshake(make_exceptional_e3({1.0, 1.0, 1.0})));
}

TEST_CASE("unfoldability of bridge graphs follows bridge-count parity") {
  for (int n = 1; n <= 9; ++n) {
    std::vector<double> lens(static_cast<size_t>(n), 1.0);
    CHECK(euler_unfoldable(make_bridge(n, lens)) == (n % 2 == 1));
  }
}

TEST_CASE("unfoldability of the other families") {
  CHECK(euler_unfoldable(make_line()));
  CHECK_FALSE(euler_unfoldable(make_halfline()));
  CHECK_FALSE(euler_unfoldable(make_star(3)));
  CHECK_FALSE(euler_unfoldable(make_star_2plus1(1.0)));
  CHECK(euler_unfoldable(make_exceptional_e3({1.0, 0.5, 0.25})));
}

TEST_CASE("euler path on the three-bridge") {
  MetricGraph b3 = make_bridge(3, {1.0, 1.0, 1.0});
  EulerPath path = find_euler_path(b3);
  REQUIRE(path.size() == 5);
  CHECK(check_euler_path(b3, path).empty());
  // half-line in from infinity, three bridges alternating, half-line out
  CHECK(path.front().edge == 3);
  CHECK(path.front().reversed);
  CHECK(path.back().edge == 4);
  CHECK_FALSE(path.back().reversed);
  CHECK_FALSE(path[1].reversed);
  CHECK(path[2].reversed);
  CHECK_FALSE(path[3].reversed);
}

TEST_CASE("euler path edge cases") {
  MetricGraph b1 = make_bridge(1, {2.0});
  EulerPath p1 = find_euler_path(b1);
  CHECK(p1.size() == 3);
  CHECK(check_euler_path(b1, p1).empty());

  CHECK_THROWS(find_euler_path(make_bridge(2, {1.0, 1.0})));

  EulerPath pl = find_euler_path(make_line());
  CHECK(pl.size() == 2);
  CHECK(check_euler_path(make_line(), pl).empty());
}

TEST_CASE("euler path on graphs needing cycle splicing") {
  MetricGraph e3 = make_exceptional_e3({1.0, 0.5, 0.25});
  EulerPath path = find_euler_path(e3);
  CHECK(path.size() == 7);
  CHECK(check_euler_path(e3, path).empty());

  for (int n = 1; n <= 9; n += 2) {
    std::vector<double> lens(static_cast<size_t>(n), 1.0);
    MetricGraph bn = make_bridge(n, lens);
    CHECK(check_euler_path(bn, find_euler_path(bn)).empty());
  }
}

TEST_CASE("graph spec round trip") {
  MetricGraph b2 = make_bridge(2, {1.0, 0.5});
  MetricGraph parsed = parse_graph_spec_string(format_graph_spec(b2));
  CHECK(parsed.num_vertices() == b2.num_vertices());
  REQUIRE(parsed.num_edges() == b2.num_edges());
  for (int j = 0; j < b2.num_edges(); ++j) {
    CHECK(parsed.edge(j).left == b2.edge(j).left);
    CHECK(parsed.edge(j).right == b2.edge(j).right);
    if (!b2.edge(j).is_halfline()) CHECK(parsed.edge(j).length == b2.edge(j).length);
  }
}

TEST_CASE("graph spec parser rejects malformed input") {
  CHECK_THROWS(parse_graph_spec_string("edge 0 1 -2\n"));
  CHECK_THROWS(parse_graph_spec_string("edge 0 1 inf\n"));  // half-line must use `-`
  CHECK_THROWS(parse_graph_spec_string("vertex 0\n"));
  CHECK_THROWS(parse_graph_spec_string(""));
  CHECK_NOTHROW(parse_graph_spec_string("# comment\nedge 0 - inf\nedge 0 1 1.5\n"));
}
