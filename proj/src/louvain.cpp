#include <algorithm>
#include <numeric>

#include "gslc/error.hpp"
#include "gslc/node_similarity.hpp"
#include "gslc/random.hpp"

namespace gslc {

namespace {

Partition relabel_dense(const std::vector<std::uint32_t>& community) {
  Partition p;
  p.labels.resize(community.size());
  std::vector<std::int64_t> dense(community.size(), -1);
  for (std::size_t i = 0; i < community.size(); ++i) {
    auto& d = dense[community[i]];
    if (d < 0) d = static_cast<std::int64_t>(p.parts++);
    p.labels[i] = static_cast<std::uint32_t>(d);
  }
  return p;
}

}  // namespace

Partition louvain_level_one(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> community(n);
  std::iota(community.begin(), community.end(), 0u);

  std::vector<double> strength(n, 0.0);
  double two_m = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    strength[i] = g.weighted_degree(i);
    two_m += strength[i];
  }
  if (two_m <= 0.0) return relabel_dense(community);

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  // Singletons are labeled by their position in the sweep order.
  std::vector<double> total(n, 0.0);  // sum of strengths per community
  for (std::uint32_t k = 0; k < n; ++k) {
    community[order[k]] = k;
    total[k] = strength[order[k]];
  }

  // Weight from the node being moved into each neighboring community;
  // negative marks "not seen in this neighborhood".
  std::vector<double> link_to(n, -1.0);
  std::vector<std::uint32_t> seen;

  for (bool moved = true; moved;) {
    moved = false;
    for (NodeId i : order) {
      const std::uint32_t own = community[i];
      const double k_i = strength[i];
      seen.clear();
      for (const Incidence& inc : g.neighbors(i)) {
        const std::uint32_t c = community[inc.node];
        if (link_to[c] < 0.0) {
          link_to[c] = 0.0;
          seen.push_back(c);
        }
        link_to[c] += g.edge(inc.edge).w;
      }
      total[own] -= k_i;

      // Gain of inserting i into c, up to a positive factor:
      //   k_{i,in}(c) - total(c) * k_i / 2m
      const double own_link = link_to[own] < 0.0 ? 0.0 : link_to[own];
      std::uint32_t best = own;
      double best_gain = own_link - total[own] * k_i / two_m;
      const double eps = 1e-12 * std::max(1.0, k_i);
      std::sort(seen.begin(), seen.end());
      for (std::uint32_t c : seen) {
        if (c == own) continue;
        const double gain = link_to[c] - total[c] * k_i / two_m;
        if (gain > best_gain + eps) {
          best = c;
          best_gain = gain;
        }
      }
      for (std::uint32_t c : seen) link_to[c] = -1.0;

      total[best] += k_i;
      if (best != own) {
        community[i] = best;
        moved = true;
      }
    }
  }
  return relabel_dense(community);
}

std::vector<Partition> louvain_ensemble(const Graph& g, int ensemble, std::uint64_t seed) {
  if (ensemble < 1) throw ValidationError("ensemble size must be >= 1");
  std::vector<Partition> runs(static_cast<std::size_t>(ensemble));
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < ensemble; ++r) {
    runs[static_cast<std::size_t>(r)] = louvain_level_one(g, seed + static_cast<std::uint64_t>(r));
  }
  return runs;
}

NodeSimilarity ecg_from_runs(const Graph& g, const std::vector<Partition>& runs) {
  if (runs.empty()) throw ValidationError("ensemble is empty");
  std::vector<double> scores(g.edge_count(), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    std::size_t together = 0;
    for (const Partition& p : runs) together += p.labels[edge.u] == p.labels[edge.v] ? 1 : 0;
    scores[e] = static_cast<double>(together) / static_cast<double>(runs.size());
  }
  return {std::move(scores)};
}

NodeSimilarity ecg_weights(const Graph& g, int ensemble, std::uint64_t seed) {
  return ecg_from_runs(g, louvain_ensemble(g, ensemble, seed));
}

}  // namespace gslc
