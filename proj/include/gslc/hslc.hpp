#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gslc/edge_similarity.hpp"
#include "gslc/graph.hpp"
#include "gslc/node_similarity.hpp"

namespace gslc {

using ItemId = std::uint32_t;
using ClusterId = std::uint32_t;

struct Link {
  ItemId a;
  ItemId b;
  double s;
};

/// Weighted graph over generic items (nodes or edges of a base graph);
/// a higher score means more similar.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  /// Throws ValidationError on self-links, duplicate pairs, out-of-range
  /// items, or scores that are negative or not finite.
  SimilarityGraph(std::size_t items, std::vector<Link> links);

  std::size_t item_count() const noexcept { return items_; }
  std::span<const Link> links() const noexcept { return links_; }

 private:
  std::size_t items_ = 0;
  std::vector<Link> links_;
};

/// Items are the nodes of g; links are its edges scored by `sim`.
SimilarityGraph similarity_graph(const Graph& g, const NodeSimilarity& sim);
/// Items are the edges of the base graph; links are adjacent edge pairs.
SimilarityGraph similarity_graph(const EdgeSimilarity& sim);

/// Single-linkage hierarchy. Ids below item_count() are leaves (items);
/// larger ids are merge events. A merge groups every component joined by
/// links of exactly its level, so it may have more than two children, and
/// each child was formed at a strictly higher level.
class MergeForest {
 public:
  struct Merge {
    double level;
    std::vector<std::uint32_t> children;
    std::size_t size;
  };

  std::size_t item_count() const noexcept { return items_; }
  std::span<const Merge> merges() const noexcept { return merges_; }
  /// One root per connected component of the similarity graph.
  std::span<const std::uint32_t> roots() const noexcept { return roots_; }

  bool is_leaf(std::uint32_t id) const noexcept { return id < items_; }
  const Merge& merge(std::uint32_t id) const { return merges_[id - items_]; }
  std::size_t size(std::uint32_t id) const { return is_leaf(id) ? 1 : merge(id).size; }

  /// Leaves below `id`, ascending.
  std::vector<ItemId> leaves(std::uint32_t id) const;

 private:
  friend MergeForest build_merge_forest(const SimilarityGraph& s);

  std::size_t items_ = 0;
  std::vector<Merge> merges_;  // by decreasing level
  std::vector<std::uint32_t> roots_;
};

/// Kruskal-style union-find over links in descending score order; links of
/// equal score form one level.
MergeForest build_merge_forest(const SimilarityGraph& s);

struct CondensedCluster {
  ClusterId id;
  std::int64_t parent = -1;  ///< -1 for a root cluster
  double lambda_min = 0.0;   ///< birth level
  double lambda_end = 0.0;   ///< level of the terminal split or disappearance
  std::size_t size_at_birth = 0;
  std::vector<ClusterId> children;
};

/// The last cluster an item belonged to and the level at which it left.
/// Items of a cluster that split into significant children are not recorded
/// against it; they leave it at lambda_end as members of the children.
struct MemberRecord {
  ItemId item;
  ClusterId cluster;
  double lambda_max;
  bool shed;  ///< left as noise while the cluster shrank
};

struct CondensedTree {
  std::size_t item_count = 0;
  std::size_t min_cluster_size = 0;
  std::vector<CondensedCluster> clusters;  ///< parents precede children
  std::vector<MemberRecord> records;
};

/// Top-down walk of each merge tree. At a split, two or more children of at
/// least min_cluster_size items end the cluster and start new ones; exactly
/// one keeps the cluster alive and sheds the rest as noise; none ends it.
CondensedTree condense(const MergeForest& forest, std::size_t min_cluster_size);

/// sigma(C) = sum over members k of lambda_max(k, C) - lambda_min(C).
std::vector<double> persistence(const CondensedTree& tree);

struct Selection {
  std::vector<ClusterId> clusters;
  double total_persistence = 0.0;
};

/// Disjoint clusters of maximal total persistence. A cluster wins over its
/// descendants only when strictly larger; a leaf cluster is always taken when
/// eligible. A lone root cluster is skipped unless allow_roots; two or more
/// roots are treated as the children of one implicit root and stay eligible.
Selection select_clusters(const CondensedTree& tree, std::span<const double> sigma,
                          bool allow_roots = false);

/// Item sets; items outside every cluster are outliers.
struct FlatClustering {
  std::vector<std::vector<ItemId>> clusters;
};

/// Items recorded in each selected cluster or any of its descendants.
FlatClustering cluster_members(const CondensedTree& tree, const Selection& selection);

FlatClustering select_flat(const CondensedTree& tree, bool allow_roots = false);

/// Node clusters made of the endpoints of each edge cluster.
FlatClustering project_edge_clusters(const FlatClustering& edge_clusters, const Graph& g);

}  // namespace gslc
