#include <cstdint>
#include <random>

#include "gslc/error.hpp"
#include "gslc/node_similarity.hpp"
#include "gslc/random.hpp"

namespace gslc {

namespace {

/// Picks an incidence of `adj` other than the one leading to `exclude`,
/// proportional to edge weight (uniform when all candidates weigh 0).
/// Returns nullptr when no candidate exists.
const Incidence* step(const Graph& g, std::span<const Incidence> adj, std::int64_t exclude,
                      Rng& rng) {
  double total = 0.0;
  std::size_t candidates = 0;
  for (const Incidence& inc : adj) {
    if (static_cast<std::int64_t>(inc.node) == exclude) continue;
    total += g.edge(inc.edge).w;
    ++candidates;
  }
  if (candidates == 0) return nullptr;
  if (total > 0.0) {
    double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    const Incidence* last = nullptr;
    for (const Incidence& inc : adj) {
      if (static_cast<std::int64_t>(inc.node) == exclude) continue;
      const double w = g.edge(inc.edge).w;
      if (w == 0.0) continue;
      last = &inc;
      if (r < w) return &inc;
      r -= w;
    }
    return last;
  }
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, candidates - 1)(rng);
  for (const Incidence& inc : adj) {
    if (static_cast<std::int64_t>(inc.node) == exclude) continue;
    if (pick-- == 0) return &inc;
  }
  return nullptr;
}

}  // namespace

NodeSimilarity rnbrw_weights(const Graph& g, std::uint64_t seed, std::size_t samples) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  if (samples == 0) samples = m;
  if (n == 0 || m == 0) throw DegenerateError("rnbrw: graph has no edges");

  std::vector<std::uint64_t> counts(m, 0);
  std::uint64_t completed = 0;

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(m, 0);
    std::uint64_t local_completed = 0;
    // stamp[v] == walk index + 1 marks v as visited by the current walk.
    std::vector<std::uint64_t> stamp(n, 0);
#pragma omp for schedule(dynamic, 256)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(samples); ++s) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
      const std::uint64_t mark = static_cast<std::uint64_t>(s) + 1;
      NodeId cur = static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
      stamp[cur] = mark;
      std::int64_t prev = -1;
      for (;;) {
        const Incidence* next = step(g, g.neighbors(cur), prev, rng);
        if (next == nullptr) break;  // stuck: discarded
        if (stamp[next->node] == mark) {
          ++local[next->edge];
          ++local_completed;
          break;
        }
        stamp[next->node] = mark;
        prev = cur;
        cur = next->node;
      }
    }
#pragma omp critical
    {
      for (std::size_t e = 0; e < m; ++e) counts[e] += local[e];
      completed += local_completed;
    }
  }

  if (completed == 0) throw DegenerateError("rnbrw: no walk closed a cycle (is the graph a forest?)");
  std::vector<double> scores(m);
  for (std::size_t e = 0; e < m; ++e) {
    scores[e] = static_cast<double>(counts[e]) / static_cast<double>(completed);
  }
  return {std::move(scores)};
}

}  // namespace gslc
