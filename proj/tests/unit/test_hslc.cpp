#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "gslc/error.hpp"
#include "gslc/hslc.hpp"
#include "gslc/pipeline.hpp"
#include "support/oracles.hpp"

using namespace gslc;

namespace {

using Sets = std::vector<std::vector<ItemId>>;

Sets sorted(Sets s) {
  for (auto& x : s) std::sort(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return s;
}

/// Components the forest implies at `level`: maximal nodes formed at or above it.
Sets forest_components(const MergeForest& f, double level) {
  const std::size_t total = f.item_count() + f.merges().size();
  std::vector<std::int64_t> parent(total, -1);
  for (std::size_t m = 0; m < f.merges().size(); ++m) {
    for (auto c : f.merges()[m].children) parent[c] = static_cast<std::int64_t>(f.item_count() + m);
  }
  auto formed = [&](std::uint32_t x) { return f.is_leaf(x) || f.merge(x).level >= level; };
  Sets out;
  for (std::uint32_t x = 0; x < total; ++x) {
    if (!formed(x)) continue;
    if (parent[x] >= 0 && formed(static_cast<std::uint32_t>(parent[x]))) continue;
    out.push_back(f.leaves(x));
  }
  return sorted(out);
}

std::vector<double> distinct_levels(const SimilarityGraph& s) {
  std::set<double> levels;
  for (const Link& l : s.links()) levels.insert(l.s);
  return {levels.begin(), levels.end()};
}

SimilarityGraph chain(const std::vector<double>& weights) {
  std::vector<Link> links;
  for (ItemId k = 0; k < weights.size(); ++k) links.push_back({k, k + 1, weights[k]});
  return {weights.size() + 1, links};
}

bool effective_allow_roots(const CondensedTree& t, bool allow_roots) {
  std::size_t roots = 0;
  for (const auto& c : t.clusters) roots += c.parent < 0;
  return allow_roots || roots >= 2;
}

CondensedTree random_tree(std::mt19937_64& rng, std::size_t k) {
  CondensedTree t;
  for (ClusterId c = 0; c < k; ++c) {
    std::int64_t parent = -1;
    if (c > 0 && rng() % 4 != 0) parent = static_cast<std::int64_t>(rng() % c);
    t.clusters.push_back({c, parent, 0.0, 0.0, 2, {}});
    if (parent >= 0) t.clusters[static_cast<std::size_t>(parent)].children.push_back(c);
  }
  return t;
}

}  // namespace

TEST_CASE("merge forest: two-step chain") {
  const MergeForest f = build_merge_forest(SimilarityGraph(3, {{0, 1, 0.9}, {1, 2, 0.5}}));
  REQUIRE(f.merges().size() == 2);
  CHECK(f.merges()[0].level == 0.9);
  CHECK(f.merges()[0].children == std::vector<std::uint32_t>{0, 1});
  CHECK(f.merges()[1].level == 0.5);
  CHECK(f.merges()[1].size == 3);
  CHECK(f.roots().size() == 1);
  CHECK(f.leaves(f.roots()[0]) == std::vector<ItemId>{0, 1, 2});
}

TEST_CASE("merge forest: equal weights form one event") {
  const MergeForest f =
      build_merge_forest(SimilarityGraph(5, {{0, 1, 0.4}, {1, 2, 0.4}, {2, 3, 0.4}, {3, 4, 0.4}}));
  REQUIRE(f.merges().size() == 1);
  CHECK(f.merges()[0].children.size() == 5);
  CHECK(f.merges()[0].level == 0.4);
}

TEST_CASE("merge forest: separate components keep separate trees") {
  const MergeForest f = build_merge_forest(SimilarityGraph(5, {{0, 1, 0.3}, {2, 3, 0.7}}));
  CHECK(f.roots().size() == 3);
  CHECK(forest_components(f, 0.0) == Sets{{0, 1}, {2, 3}, {4}});
}

TEST_CASE("property: merge forest matches brute-force threshold components") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const SimilarityGraph s = oracle::random_similarity_graph(rng, 30);
    const MergeForest f = build_merge_forest(s);
    for (std::size_t m = 1; m < f.merges().size(); ++m) CHECK(f.merges()[m].level <= f.merges()[m - 1].level);
    for (double level : distinct_levels(s)) {
      CHECK(forest_components(f, level) == oracle::threshold_components(s.item_count(), s.links(), level));
    }
  }
}

TEST_CASE("condense: the three split cases") {
  SUBCASE("two significant children") {
    const CondensedTree t =
        condense(build_merge_forest(chain({0.9, 0.95, 0.91, 0.93, 0.8, 0.92, 0.94, 0.96, 0.97})), 4);
    REQUIRE(t.clusters.size() == 3);
    CHECK(t.clusters[0].parent == -1);
    CHECK(t.clusters[0].lambda_end == 0.8);
    CHECK(t.clusters[0].children.size() == 2);
    for (ClusterId c : {1u, 2u}) {
      CHECK(t.clusters[c].size_at_birth == 5);
      CHECK(t.clusters[c].lambda_min == 0.8);
    }
  }
  SUBCASE("one significant child sheds noise") {
    const CondensedTree t =
        condense(build_merge_forest(chain({0.9, 0.95, 0.91, 0.93, 0.92, 0.94, 0.96, 0.8, 0.97})), 4);
    REQUIRE(t.clusters.size() == 1);
    std::vector<ItemId> shed;
    for (const MemberRecord& r : t.records) {
      if (r.lambda_max == 0.8) {
        shed.push_back(r.item);
        CHECK(r.shed);
      }
    }
    std::sort(shed.begin(), shed.end());
    CHECK(shed == std::vector<ItemId>{8, 9});
  }
  SUBCASE("no significant child ends the cluster") {
    // Components {0,1,2}, {3,4,5}, {6..9} join at 0.5.
    const CondensedTree t = condense(
        build_merge_forest(chain({0.9, 0.9, 0.5, 0.9, 0.9, 0.5, 0.9, 0.9, 0.9})), 5);
    REQUIRE(t.clusters.size() == 1);
    CHECK(t.clusters[0].lambda_end == 0.5);
    CHECK(t.records.size() == 10);
    for (const MemberRecord& r : t.records) CHECK(r.lambda_max == 0.5);
  }
  SUBCASE("small components are all noise") {
    const CondensedTree t = condense(build_merge_forest(SimilarityGraph(4, {{0, 1, 1.0}, {2, 3, 1.0}})), 3);
    CHECK(t.clusters.empty());
    CHECK(t.records.empty());
  }
  CHECK_THROWS_AS(condense(build_merge_forest(chain({1.0})), 1), ValidationError);
}

TEST_CASE("property: significant clusters match threshold components of size >= m_s") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const SimilarityGraph s = oracle::random_similarity_graph(rng, 30);
    const std::size_t ms = 2 + rng() % 5;
    const CondensedTree t = condense(build_merge_forest(s), ms);
    for (double level : distinct_levels(s)) {
      Sets want;
      for (auto& comp : oracle::threshold_components(s.item_count(), s.links(), level)) {
        if (comp.size() >= ms) want.push_back(comp);
      }
      CHECK(oracle::alive_clusters(t, level) == sorted(want));
    }
    // Structural invariants.
    std::set<ItemId> recorded;
    for (const auto& c : t.clusters) {
      CHECK(c.size_at_birth >= ms);
      CHECK(c.lambda_end >= c.lambda_min);
      if (c.parent >= 0) {
        CHECK(c.lambda_min == t.clusters[static_cast<std::size_t>(c.parent)].lambda_end);
        CHECK(c.parent < static_cast<std::int64_t>(c.id));
      }
    }
    for (const MemberRecord& r : t.records) {
      CHECK(r.lambda_max >= t.clusters[r.cluster].lambda_min);
      CHECK(r.lambda_max <= t.clusters[r.cluster].lambda_end);
      CHECK(recorded.insert(r.item).second);
    }
  }
}

TEST_CASE("persistence") {
  SUBCASE("hand-built records") {
    CondensedTree t;
    t.clusters.push_back({0, -1, 0.2, 0.9, 5, {}});
    const double exits[] = {0.9, 0.9, 0.7, 0.5, 0.5};
    for (ItemId k = 0; k < 5; ++k) t.records.push_back({k, 0, exits[k], k >= 2});
    CHECK(persistence(t)[0] == doctest::Approx(2.5));
  }
  SUBCASE("every item leaves at the terminal split") {
    const CondensedTree t =
        condense(build_merge_forest(chain({0.9, 0.9, 0.9, 0.9, 0.3, 0.95, 0.95, 0.95, 0.95})), 4);
    auto sigma = persistence(t);
    REQUIRE(sigma.size() == 3);
    CHECK(sigma[0] == doctest::Approx(10 * (0.3 - 0.3)));
    // Both halves are born at 0.3 and fall apart into single items at once.
    std::sort(sigma.begin() + 1, sigma.end());
    CHECK(sigma[1] == doctest::Approx(5 * (0.9 - 0.3)));
    CHECK(sigma[2] == doctest::Approx(5 * (0.95 - 0.3)));
  }
  SUBCASE("zero-width cluster") {
    const CondensedTree t = condense(build_merge_forest(chain({0.5, 0.5, 0.5})), 2);
    REQUIRE(t.clusters.size() == 1);
    CHECK(persistence(t)[0] == 0.0);
  }
}

TEST_CASE("selection examples") {
  SUBCASE("children of an ineligible root") {
    CondensedTree t;
    t.clusters = {{0, -1, 0, 1, 10, {1, 2}}, {1, 0, 1, 2, 5, {}}, {2, 0, 1, 2, 5, {}}};
    const std::vector<double> sigma{100.0, 3.0, 2.0};
    const Selection s = select_clusters(t, sigma);
    CHECK(s.clusters == std::vector<ClusterId>{1, 2});
    CHECK(s.total_persistence == 5.0);
    CHECK(select_clusters(t, sigma, true).clusters == std::vector<ClusterId>{0});
  }
  SUBCASE("a persistent parent absorbs its children") {
    CondensedTree t;
    t.clusters = {{0, -1, 0, 1, 20, {1}}, {1, 0, 1, 2, 10, {2, 3}}, {2, 1, 2, 3, 5, {}},
                  {3, 1, 2, 3, 5, {}}};
    const std::vector<double> sigma{0.0, 10.0, 3.0, 2.0};
    CHECK(select_clusters(t, sigma).clusters == std::vector<ClusterId>{1});
  }
  SUBCASE("ties prefer the descendants") {
    CondensedTree t;
    t.clusters = {{0, -1, 0, 1, 20, {1}}, {1, 0, 1, 2, 10, {2, 3}}, {2, 1, 2, 3, 5, {}},
                  {3, 1, 2, 3, 5, {}}};
    const std::vector<double> sigma{0.0, 5.0, 3.0, 2.0};
    CHECK(select_clusters(t, sigma).clusters == std::vector<ClusterId>{2, 3});
  }
  SUBCASE("several roots are eligible") {
    CondensedTree t;
    t.clusters = {{0, -1, 1, 1, 5, {}}, {1, -1, 1, 1, 5, {}}};
    CHECK(select_clusters(t, std::vector<double>{0.0, 0.0}).clusters == std::vector<ClusterId>{0, 1});
  }
  SUBCASE("a lone root is not") {
    CondensedTree t;
    t.clusters = {{0, -1, 1, 1, 5, {}}};
    CHECK(select_clusters(t, std::vector<double>{4.0}).clusters.empty());
  }
}

TEST_CASE("property: selection total equals the best antichain") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 300; ++trial) {
    const CondensedTree t = random_tree(rng, 1 + rng() % 12);
    std::vector<double> sigma;
    for (std::size_t c = 0; c < t.clusters.size(); ++c) sigma.push_back(static_cast<double>(rng() % 6));
    const bool allow = trial % 2 == 0;
    const Selection s = select_clusters(t, sigma, allow);
    std::vector<std::int64_t> parent;
    for (const auto& c : t.clusters) parent.push_back(c.parent);
    CHECK(s.total_persistence == oracle::best_antichain(parent, sigma, effective_allow_roots(t, allow)));
    // Antichain: no selected cluster is an ancestor of another.
    std::set<ClusterId> chosen(s.clusters.begin(), s.clusters.end());
    for (ClusterId c : s.clusters) {
      for (auto p = t.clusters[c].parent; p >= 0; p = t.clusters[static_cast<std::size_t>(p)].parent) {
        CHECK(chosen.count(static_cast<ClusterId>(p)) == 0);
      }
    }
  }
}

TEST_CASE("property: flat clusters are disjoint and respect the antichain oracle") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 200; ++trial) {
    const SimilarityGraph s = oracle::random_similarity_graph(rng, 30);
    const CondensedTree t = condense(build_merge_forest(s), 2 + rng() % 4);
    if (t.clusters.size() > 12) continue;
    const auto sigma = persistence(t);
    for (double x : sigma) CHECK(x >= 0.0);
    const Selection sel = select_clusters(t, sigma);
    std::vector<std::int64_t> parent;
    for (const auto& c : t.clusters) parent.push_back(c.parent);
    CHECK(sel.total_persistence ==
          doctest::Approx(oracle::best_antichain(parent, sigma, effective_allow_roots(t, false))).epsilon(1e-12));
    const FlatClustering flat = cluster_members(t, sel);
    std::set<ItemId> seen;
    for (const auto& c : flat.clusters) {
      CHECK(c.size() >= t.min_cluster_size);
      for (ItemId x : c) CHECK(seen.insert(x).second);
    }
  }
}

TEST_CASE("property: affine transforms scale persistence and keep the selection") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 50; ++trial) {
    const SimilarityGraph s = oracle::random_similarity_graph(rng, 30);
    std::vector<Link> moved(s.links().begin(), s.links().end());
    for (Link& l : moved) l.s = 2.0 * l.s + 0.1;
    const std::size_t ms = 2 + rng() % 4;
    const ClusterResult a = cluster_similarity(s, ms, false);
    const ClusterResult b = cluster_similarity(SimilarityGraph(s.item_count(), moved), ms, false);
    REQUIRE(a.tree.clusters.size() == b.tree.clusters.size());
    for (std::size_t c = 0; c < a.tree.clusters.size(); ++c) {
      CHECK(a.tree.clusters[c].parent == b.tree.clusters[c].parent);
      CHECK(a.tree.clusters[c].size_at_birth == b.tree.clusters[c].size_at_birth);
      CHECK(std::abs(b.persistence[c] - 2.0 * a.persistence[c]) <= 1e-9);
    }
    CHECK(sorted(a.items.clusters) == sorted(b.items.clusters));
  }
}

TEST_CASE("projection onto nodes") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto e01 = static_cast<ItemId>(g.find_edge(0, 1));
  const auto e12 = static_cast<ItemId>(g.find_edge(1, 2));
  const auto e02 = static_cast<ItemId>(g.find_edge(0, 2));
  CHECK(project_edge_clusters({{{e01}, {e12}}}, g).clusters == Sets{{0, 1}, {1, 2}});
  CHECK(project_edge_clusters({}, g).clusters.empty());
  CHECK(project_edge_clusters({{{e01, e12, e02}}}, g).clusters == Sets{{0, 1, 2}});
  CHECK_THROWS_AS(project_edge_clusters({{{99}}}, g), ValidationError);

  // Every projected node has an incident edge inside the edge cluster.
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ItemId> edges;
    for (ItemId e = 0; e < g.edge_count(); ++e)
      if (rng() % 2) edges.push_back(e);
    const auto nodes = project_edge_clusters({{edges}}, g).clusters[0];
    for (NodeId v : nodes) {
      bool incident = false;
      for (ItemId e : edges) incident |= g.edge(e).u == v || g.edge(e).v == v;
      CHECK(incident);
    }
  }
}

TEST_CASE("pipeline examples") {
  SUBCASE("two disjoint K5 with ECG") {
    std::vector<Edge> edges;
    for (NodeId base : {0u, 5u})
      for (NodeId a = 0; a < 5; ++a)
        for (NodeId b = a + 1; b < 5; ++b) edges.push_back({base + a, base + b});
    ClusterOptions opt;
    opt.method = Method::Ecg;
    opt.min_cluster_size = 3;
    opt.seed = 1;
    const ClusterResult r = cluster(Graph::from_edges(10, edges), opt);
    CHECK(sorted(r.nodes.clusters) == Sets{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  }
  SUBCASE("everything smaller than m_s") {
    ClusterOptions opt;
    opt.method = Method::ShortCycles;
    opt.min_cluster_size = 15;
    const ClusterResult r = cluster(Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}), opt);
    CHECK(r.nodes.clusters.empty());
  }
  SUBCASE("link communities on a bowtie overlap at the shared vertex") {
    ClusterOptions opt;
    opt.method = Method::LinkCommunities;
    opt.min_cluster_size = 3;
    const Graph bowtie = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
    const ClusterResult r = cluster(bowtie, opt);
    CHECK(sorted(r.nodes.clusters) == Sets{{0, 1, 2}, {0, 3, 4}});
    CHECK(r.edge_items);
  }
}
