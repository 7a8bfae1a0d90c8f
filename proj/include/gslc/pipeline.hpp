#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gslc/graph.hpp"
#include "gslc/hslc.hpp"
#include "gslc/methods.hpp"

namespace gslc {

struct ClusterOptions {
  Method method = Method::Ecg;
  MethodParams params;
  std::size_t min_cluster_size = 15;
  std::uint64_t seed = 0;
  bool allow_roots = false;
};

struct ClusterResult {
  bool edge_items = false;     ///< items are edges of the input graph
  SimilarityGraph similarity;  ///< over nodes, or over edges for edge methods
  CondensedTree tree;
  std::vector<double> persistence;
  Selection selection;
  FlatClustering items;  ///< disjoint clusters of similarity items
  FlatClustering nodes;  ///< node clusters; may overlap for edge methods
};

/// Scores the graph with the chosen measure and clusters the result.
SimilarityGraph score(const Graph& g, Method method, const MethodParams& params, std::uint64_t seed);

/// Full pipeline: similarity, merge forest, condensed tree, flat selection,
/// and projection onto nodes for edge methods.
ClusterResult cluster(const Graph& g, const ClusterOptions& options);

/// Clusters an already scored similarity graph.
ClusterResult cluster_similarity(SimilarityGraph similarity, std::size_t min_cluster_size,
                                 bool allow_roots);

}  // namespace gslc
