#pragma once

#include <cstdint>
#include <vector>

#include "gslc/graph.hpp"
#include "gslc/methods.hpp"
#include "gslc/node_similarity.hpp"

namespace gslc {

/// Similarity of every adjacent edge pair. Pairs are the links of `line`;
/// scores are indexed by link EdgeId.
struct EdgeSimilarity {
  LineGraph line;
  std::vector<double> scores;
};

/// Jaccard similarity of the closed neighborhoods of the two outer endpoints:
/// s(e_ij, e_jk) = |N[i] & N[k]| / |N[i] | N[k]|.
EdgeSimilarity link_communities(const Graph& g);

/// s(e_ij, e_jk) = 1 / deg(j).
EdgeSimilarity lgtp(const Graph& g);

/// Runs a node measure on the transition-weighted line graph.
EdgeSimilarity lg_apply(const Graph& g, NodeMethod method, const MethodParams& params,
                        std::uint64_t seed);

/// Fraction of runs placing i, j and k in one part, for each pair
/// (e_ij, e_jk).
EdgeSimilarity eecg_from_runs(const Graph& g, const std::vector<Partition>& runs);
EdgeSimilarity eecg(const Graph& g, int ensemble = 16, std::uint64_t seed = 0);

}  // namespace gslc
