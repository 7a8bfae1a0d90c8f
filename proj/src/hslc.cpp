#include "gslc/hslc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gslc/error.hpp"

namespace gslc {

SimilarityGraph::SimilarityGraph(std::size_t items, std::vector<Link> links)
    : items_(items), links_(std::move(links)) {
  for (Link& l : links_) {
    if (l.a >= items_ || l.b >= items_) throw ValidationError("similarity link item out of range");
    if (l.a == l.b) throw ValidationError("similarity graph has a self-link");
    if (!std::isfinite(l.s) || l.s < 0.0) {
      throw ValidationError("similarity scores must be finite and non-negative");
    }
    if (l.a > l.b) std::swap(l.a, l.b);
  }
  std::vector<std::pair<ItemId, ItemId>> pairs;
  pairs.reserve(links_.size());
  for (const Link& l : links_) pairs.emplace_back(l.a, l.b);
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
    throw ValidationError("similarity graph has a duplicate pair");
  }
}

SimilarityGraph similarity_graph(const Graph& g, const NodeSimilarity& sim) {
  if (sim.scores.size() != g.edge_count()) throw ValidationError("one score per edge expected");
  std::vector<Link> links;
  links.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    links.push_back({g.edge(e).u, g.edge(e).v, sim.scores[e]});
  }
  return {g.node_count(), std::move(links)};
}

SimilarityGraph similarity_graph(const EdgeSimilarity& sim) {
  const Graph& line = sim.line.graph;
  if (sim.scores.size() != line.edge_count()) throw ValidationError("one score per edge pair expected");
  std::vector<Link> links;
  links.reserve(line.edge_count());
  for (EdgeId l = 0; l < line.edge_count(); ++l) {
    links.push_back({line.edge(l).u, line.edge(l).v, sim.scores[l]});
  }
  return {line.node_count(), std::move(links)};
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return a;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace

std::vector<ItemId> MergeForest::leaves(std::uint32_t id) const {
  std::vector<ItemId> out;
  std::vector<std::uint32_t> stack{id};
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    if (is_leaf(x)) {
      out.push_back(x);
    } else {
      const auto& kids = merge(x).children;
      stack.insert(stack.end(), kids.begin(), kids.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MergeForest build_merge_forest(const SimilarityGraph& s) {
  MergeForest forest;
  const std::size_t n = s.item_count();
  forest.items_ = n;
  auto links = s.links();

  std::vector<std::size_t> order(links.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return links[x].s > links[y].s; });

  DisjointSets sets(n);
  // Forest node standing for the component whose representative is r.
  std::vector<std::uint32_t> component(n);
  std::iota(component.begin(), component.end(), 0u);

  std::vector<std::uint32_t> touched;          // representatives joined at this level
  std::vector<std::size_t> stamp(n, 0);        // level index + 1 when in `touched`
  std::vector<std::vector<std::uint32_t>> bucket(n);
  std::size_t level_index = 0;

  for (std::size_t begin = 0; begin < order.size();) {
    const double level = links[order[begin]].s;
    std::size_t end = begin;
    while (end < order.size() && links[order[end]].s == level) ++end;
    ++level_index;

    // Components as they were just above this level.
    touched.clear();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> joins;
    for (std::size_t k = begin; k < end; ++k) {
      const Link& l = links[order[k]];
      const std::uint32_t ra = sets.find(l.a), rb = sets.find(l.b);
      if (ra == rb) continue;
      joins.emplace_back(ra, rb);
      for (std::uint32_t r : {ra, rb}) {
        if (stamp[r] != level_index) {
          stamp[r] = level_index;
          touched.push_back(r);
        }
      }
    }
    for (const auto& [ra, rb] : joins) sets.unite(ra, rb);

    std::vector<std::uint32_t> new_roots;
    for (std::uint32_t r : touched) {
      const std::uint32_t root = sets.find(r);
      if (bucket[root].empty()) new_roots.push_back(root);
      bucket[root].push_back(component[r]);
    }
    std::sort(new_roots.begin(), new_roots.end());
    for (std::uint32_t root : new_roots) {
      auto& kids = bucket[root];
      std::sort(kids.begin(), kids.end());
      std::size_t size = 0;
      for (std::uint32_t c : kids) size += forest.size(c);
      forest.merges_.push_back({level, std::move(kids), size});
      kids = {};
      component[root] = static_cast<std::uint32_t>(n + forest.merges_.size() - 1);
    }
    begin = end;
  }

  for (std::uint32_t i = 0; i < n; ++i) {
    if (sets.find(i) == i) forest.roots_.push_back(component[i]);
  }
  std::sort(forest.roots_.begin(), forest.roots_.end());
  return forest;
}

CondensedTree condense(const MergeForest& forest, std::size_t min_cluster_size) {
  if (min_cluster_size < 2) throw ValidationError("minimum cluster size must be >= 2");
  CondensedTree tree;
  tree.item_count = forest.item_count();
  tree.min_cluster_size = min_cluster_size;

  auto new_cluster = [&](std::int64_t parent, double birth, std::size_t size) {
    const auto id = static_cast<ClusterId>(tree.clusters.size());
    tree.clusters.push_back({id, parent, birth, birth, size, {}});
    if (parent >= 0) tree.clusters[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  };
  auto record_all = [&](std::uint32_t node, ClusterId c, double level, bool shed) {
    for (ItemId item : forest.leaves(node)) tree.records.push_back({item, c, level, shed});
  };

  // (forest node, cluster living at that node), explored depth first.
  std::vector<std::pair<std::uint32_t, ClusterId>> pending;
  for (std::uint32_t root : forest.roots()) {
    if (forest.size(root) < min_cluster_size) continue;
    const double birth = forest.merge(root).level;
    pending.emplace_back(root, new_cluster(-1, birth, forest.size(root)));
    while (!pending.empty()) {
      auto [node, cluster] = pending.back();
      pending.pop_back();
      for (;;) {
        const auto& merge = forest.merge(node);
        std::vector<std::uint32_t> big, small;
        for (std::uint32_t child : merge.children) {
          (forest.size(child) >= min_cluster_size ? big : small).push_back(child);
        }
        if (big.size() == 1) {
          for (std::uint32_t child : small) record_all(child, cluster, merge.level, true);
          node = big.front();
          continue;
        }
        tree.clusters[cluster].lambda_end = merge.level;
        if (big.empty()) {
          record_all(node, cluster, merge.level, false);
          break;
        }
        for (std::uint32_t child : small) record_all(child, cluster, merge.level, false);
        // Reverse push so the lower child id is explored (and numbered) first.
        std::vector<std::pair<std::uint32_t, ClusterId>> spawned;
        for (std::uint32_t child : big) {
          spawned.emplace_back(child, new_cluster(cluster, merge.level, forest.size(child)));
        }
        pending.insert(pending.end(), spawned.rbegin(), spawned.rend());
        break;
      }
    }
  }
  return tree;
}

std::vector<double> persistence(const CondensedTree& tree) {
  std::vector<double> sigma(tree.clusters.size(), 0.0);
  for (const MemberRecord& r : tree.records) {
    sigma[r.cluster] += r.lambda_max - tree.clusters[r.cluster].lambda_min;
  }
  for (const CondensedCluster& c : tree.clusters) {
    for (ClusterId child : c.children) {
      sigma[c.id] += static_cast<double>(tree.clusters[child].size_at_birth) * (c.lambda_end - c.lambda_min);
    }
  }
  return sigma;
}

Selection select_clusters(const CondensedTree& tree, std::span<const double> sigma, bool allow_roots) {
  const std::size_t k = tree.clusters.size();
  if (sigma.size() != k) throw ValidationError("one persistence value per cluster expected");
  std::size_t root_count = 0;
  for (const CondensedCluster& c : tree.clusters) root_count += c.parent < 0;
  // Several significant components behave as children of one implicit root.
  const bool roots_eligible = allow_roots || root_count >= 2;
  std::vector<double> best(k, 0.0);
  std::vector<char> chosen(k, 0);
  for (std::size_t idx = k; idx-- > 0;) {
    const CondensedCluster& c = tree.clusters[idx];
    double below = 0.0;
    for (ClusterId child : c.children) below += best[child];
    const bool eligible = c.parent >= 0 || roots_eligible;
    if (eligible && (c.children.empty() || sigma[idx] > below)) {
      chosen[idx] = 1;
      best[idx] = sigma[idx];
    } else {
      best[idx] = below;
    }
  }

  Selection out;
  std::vector<ClusterId> stack;
  for (const CondensedCluster& c : tree.clusters) {
    if (c.parent < 0) stack.push_back(c.id);
  }
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    const ClusterId c = stack.back();
    stack.pop_back();
    if (chosen[c]) {
      out.clusters.push_back(c);
      out.total_persistence += sigma[c];
      continue;
    }
    const auto& kids = tree.clusters[c].children;
    stack.insert(stack.end(), kids.rbegin(), kids.rend());
  }
  std::sort(out.clusters.begin(), out.clusters.end());
  return out;
}

FlatClustering cluster_members(const CondensedTree& tree, const Selection& selection) {
  // Owning selected cluster of every cluster in a selected subtree.
  std::vector<std::int64_t> owner(tree.clusters.size(), -1);
  for (ClusterId c : selection.clusters) owner[c] = c;
  for (const CondensedCluster& c : tree.clusters) {
    if (owner[c.id] < 0 && c.parent >= 0) owner[c.id] = owner[static_cast<std::size_t>(c.parent)];
  }
  std::vector<std::int64_t> slot(tree.clusters.size(), -1);
  FlatClustering out;
  out.clusters.resize(selection.clusters.size());
  for (std::size_t k = 0; k < selection.clusters.size(); ++k) slot[selection.clusters[k]] = static_cast<std::int64_t>(k);
  for (const MemberRecord& r : tree.records) {
    const std::int64_t o = owner[r.cluster];
    if (o >= 0) out.clusters[static_cast<std::size_t>(slot[static_cast<std::size_t>(o)])].push_back(r.item);
  }
  for (auto& members : out.clusters) std::sort(members.begin(), members.end());
  return out;
}

FlatClustering select_flat(const CondensedTree& tree, bool allow_roots) {
  const std::vector<double> sigma = persistence(tree);
  return cluster_members(tree, select_clusters(tree, sigma, allow_roots));
}

FlatClustering project_edge_clusters(const FlatClustering& edge_clusters, const Graph& g) {
  FlatClustering out;
  out.clusters.reserve(edge_clusters.clusters.size());
  for (const auto& edges : edge_clusters.clusters) {
    std::vector<ItemId> nodes;
    nodes.reserve(edges.size() * 2);
    for (ItemId e : edges) {
      if (e >= g.edge_count()) throw ValidationError("edge cluster refers to an unknown edge");
      nodes.push_back(g.edge(e).u);
      nodes.push_back(g.edge(e).v);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    out.clusters.push_back(std::move(nodes));
  }
  return out;
}

}  // namespace gslc
