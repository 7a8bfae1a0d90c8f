#include <doctest.h>

#include <algorithm>
#include <random>
#include <tuple>
#include <sstream>

#include "gslc/error.hpp"
#include "gslc/graph.hpp"
#include "gslc/io.hpp"

using namespace gslc;

namespace {

LabeledGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

Graph make(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, std::move(edges)); }

}  // namespace

TEST_CASE("load_edge_list parses plain pairs") {
  const auto lg = parse("0 1\n1 2\n");
  CHECK(lg.graph.node_count() == 3);
  REQUIRE(lg.graph.edge_count() == 2);
  CHECK(lg.graph.edge(0) == Edge{0, 1, 1.0});
  CHECK(lg.graph.edge(1) == Edge{1, 2, 1.0});
}

TEST_CASE("load_edge_list drops self-loops and remaps labels densely") {
  const auto lg = parse("5 5\n5 7\n");
  CHECK(lg.graph.node_count() == 2);
  CHECK(lg.graph.edge_count() == 1);
  CHECK(lg.labels == std::vector<Label>{5, 7});
  CHECK(lg.id_of(5) == 0);
  CHECK(lg.id_of(7) == 1);
  CHECK(lg.id_of(6) == -1);
}

TEST_CASE("load_edge_list merges duplicates keeping the max weight") {
  const auto lg = parse("0 1 2.0\n1 0 3.0\n");
  REQUIRE(lg.graph.edge_count() == 1);
  CHECK(lg.graph.edge(0) == Edge{0, 1, 3.0});
  CHECK_FALSE(lg.graph.unit_weights());
}

TEST_CASE("load_edge_list accepts comments and blank lines") {
  const auto lg = parse("# header\n\n0 1 # trailing\n  2   1\n");
  CHECK(lg.graph.edge_count() == 2);
}

TEST_CASE("load_edge_list reports malformed lines with their number") {
  try {
    parse("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0 1 2 3\n"), ParseError);
  CHECK_THROWS_AS(parse("0\n"), ParseError);
  CHECK_THROWS_AS(parse("-1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1 -2\n"), ValidationError);
}

TEST_CASE("closed neighborhoods") {
  const Graph path = make(3, {{0, 1}, {1, 2}});
  CHECK(closed_neighborhood(path, 1) == std::vector<NodeId>{0, 1, 2});
  CHECK(closed_neighborhood(path, 0) == std::vector<NodeId>{0, 1});
  const Graph isolated = make(3, {{0, 1}});
  CHECK(closed_neighborhood(isolated, 2) == std::vector<NodeId>{2});
  const Graph triangle = make(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(closed_neighborhood(triangle, 0) == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("line graph of small graphs") {
  SUBCASE("path") {
    const LineGraph lg = build_line_graph(make(3, {{0, 1}, {1, 2}}));
    CHECK(lg.graph.node_count() == 2);
    REQUIRE(lg.graph.edge_count() == 1);
    CHECK(lg.graph.edge(0).w == doctest::Approx(0.5));
    CHECK(lg.shared[0] == 1);
  }
  SUBCASE("star K1,3") {
    const LineGraph lg = build_line_graph(make(4, {{0, 1}, {0, 2}, {0, 3}}));
    REQUIRE(lg.graph.edge_count() == 3);
    for (const Edge& e : lg.graph.edges()) CHECK(e.w == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("triangle") {
    const Graph tri = make(3, {{0, 1}, {1, 2}, {0, 2}});
    const LineGraph lg = build_line_graph(tri);
    REQUIRE(lg.graph.edge_count() == 3);
    for (EdgeId l = 0; l < 3; ++l) {
      CHECK(lg.graph.edge(l).w == doctest::Approx(0.5));
      const auto [i, k] = lg.outer_endpoints(tri, l);
      CHECK(i != k);
      CHECK(i != lg.shared[l]);
    }
  }
  SUBCASE("weights do not change structural degree") {
    const LineGraph lg = build_line_graph(make(3, {{0, 1, 7.0}, {1, 2, 0.1}}));
    CHECK(lg.graph.edge(0).w == doctest::Approx(0.5));
  }
}

TEST_CASE("property: line graph link count and adjacency consistency") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 25;
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < n * 2; ++k) {
      edges.push_back({static_cast<NodeId>(rng() % n), static_cast<NodeId>(rng() % n), 1.0});
    }
    const Graph g = make(n, edges);
    std::size_t expected = 0;
    for (NodeId j = 0; j < n; ++j) {
      const std::size_t d = g.degree(j);
      expected += d * (d - (d ? 1 : 0)) / 2;
    }
    if (g.edge_count() == 0) continue;
    const LineGraph lg = build_line_graph(g);
    CHECK(lg.graph.node_count() == g.edge_count());
    CHECK(lg.graph.edge_count() == expected);
    for (EdgeId l = 0; l < lg.graph.edge_count(); ++l) {
      CHECK(lg.graph.edge(l).w == doctest::Approx(1.0 / static_cast<double>(g.degree(lg.shared[l]))));
    }

    // Every adjacency entry maps back to exactly its canonical edge.
    std::size_t entries = 0;
    for (NodeId i = 0; i < n; ++i) {
      for (const Incidence& inc : g.neighbors(i)) {
        const Edge& e = g.edge(inc.edge);
        CHECK(((e.u == i && e.v == inc.node) || (e.v == i && e.u == inc.node)));
        CHECK(g.find_edge(i, inc.node) == inc.edge);
        ++entries;
      }
    }
    CHECK(entries == 2 * g.edge_count());
  }
}

TEST_CASE("property: edge list round-trips through text") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::ostringstream text;
    for (int k = 0; k < 30; ++k) {
      text << rng() % 1000 << ' ' << rng() % 1000;
      if (trial % 2) text << ' ' << format_double(static_cast<double>(rng() % 1000) / 7.0);
      text << '\n';
    }
    const LabeledGraph first = parse(text.str());
    std::ostringstream again;
    write_edge_list(again, first.graph, first.labels);
    const LabeledGraph second = parse(again.str());
    // Labels only seen on self-loops vanish; compare edges by label.
    auto labeled = [](const LabeledGraph& lg) {
      std::vector<std::tuple<Label, Label, double>> out;
      for (const Edge& e : lg.graph.edges()) out.emplace_back(lg.labels[e.u], lg.labels[e.v], e.w);
      std::sort(out.begin(), out.end());
      return out;
    };
    CHECK(labeled(second) == labeled(first));
  }
}
