#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gslc/graph.hpp"

namespace gslc {

/// Similarity s(i, j) for every edge of a graph, indexed by EdgeId.
struct NodeSimilarity {
  std::vector<double> scores;
};

/// Community label per node, dense in [0, parts).
struct Partition {
  std::vector<std::uint32_t> labels;
  std::size_t parts = 0;
};

/// Iterated short-cycle weighting. Each round scores an edge by its weighted
/// triangle and rectangle counts over the degree-based maximum
/// (min(d_i, d_j) - 1) + (d_i - 1)(d_j - 1) and feeds the scores back in as
/// weights. Starting weights are the input weights scaled by their maximum.
NodeSimilarity short_cycle_weights(const Graph& g, int iterations = 3);

/// Iterated random-walk weighting: cosine similarity of the rows of
/// T + T^2 + ... + T^ell, T the row-normalized weighted adjacency.
NodeSimilarity rww_weights(const Graph& g, int ell = 3, int iterations = 3);

/// Default cap on memoized node pairs for simrank_weights.
inline constexpr std::size_t kDefaultSimRankPairBudget = 50'000'000;

/// Neighborhood-averaged SimRank without decay:
///   s_t(i, j) = 1 / (|N(i)| |N(j)|) * sum_{x in N(i), y in N(j)} s_{t-1}(x, y),
/// with s_0 the identity. Since S_t = W^t (W^t)^T for W = D^-1 A, each score
/// is the dot product of two sparse t-step walk rows. Throws
/// ResourceLimitError when the rows hold more than pair_budget entries.
NodeSimilarity simrank_weights(const Graph& g, int t = 3,
                               std::size_t pair_budget = kDefaultSimRankPairBudget);

/// Same scores by the recursion itself, memoized over the unordered pairs it
/// reaches. Slower on dense neighborhoods; the budget bounds memo entries.
NodeSimilarity simrank_memoized(const Graph& g, int t = 3,
                                std::size_t pair_budget = kDefaultSimRankPairBudget);

/// Renewal non-backtracking random walks: the fraction of completed walks
/// whose cycle-closing step crossed each edge. samples == 0 means one walk
/// per edge. Throws DegenerateError when no walk closes a cycle.
NodeSimilarity rnbrw_weights(const Graph& g, std::uint64_t seed, std::size_t samples = 0);

/// Local-moving phase of Louvain (resolution 1) from singletons, sweeping
/// nodes in a seeded random order until a sweep moves nothing.
Partition louvain_level_one(const Graph& g, std::uint64_t seed);

/// `ensemble` level-one runs with seeds seed, seed + 1, ...
std::vector<Partition> louvain_ensemble(const Graph& g, int ensemble, std::uint64_t seed);

/// Fraction of runs that put both endpoints in the same part.
NodeSimilarity ecg_from_runs(const Graph& g, const std::vector<Partition>& runs);
NodeSimilarity ecg_weights(const Graph& g, int ensemble = 16, std::uint64_t seed = 0);

}  // namespace gslc
