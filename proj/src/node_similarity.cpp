#include "gslc/node_similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "gslc/error.hpp"
#include "gslc/parallel.hpp"

namespace gslc {

namespace {

double max_weight(const Graph& g) {
  double m = 0.0;
  for (const Edge& e : g.edges()) m = std::max(m, e.w);
  return m;
}

}  // namespace

NodeSimilarity short_cycle_weights(const Graph& g, int iterations) {
  if (iterations < 1) throw ValidationError("short cycles: iterations must be >= 1");
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();

  std::vector<double> w(m, 0.0);
  if (const double top = max_weight(g); top > 0.0) {
    for (EdgeId e = 0; e < m; ++e) w[e] = g.edge(e).w / top;
  }
  std::vector<double> next(m, 0.0);

  for (int round = 0; round < iterations; ++round) {
    parallel_region([&](auto&& for_each_index) {
      // Weight of the edge (y, j) for every y in N(j) \ {i}, else 0 with
      // the flag cleared.
      std::vector<double> to_j(n, 0.0);
      std::vector<char> in_j(n, 0);
      for_each_index(m, [&](std::size_t e) {
        const Edge& edge = g.edge(static_cast<EdgeId>(e));
        const NodeId i = edge.u, j = edge.v;
        for (const Incidence& y : g.neighbors(j)) {
          if (y.node == i) continue;
          to_j[y.node] = w[y.edge];
          in_j[y.node] = 1;
        }
        double triangles = 0.0;
        double rectangles = 0.0;
        for (const Incidence& x : g.neighbors(i)) {
          if (x.node == j) continue;
          const double w_ix = w[x.edge];
          if (in_j[x.node]) triangles += w_ix * to_j[x.node];
          for (const Incidence& y : g.neighbors(x.node)) {
            if (in_j[y.node]) rectangles += w_ix * w[y.edge] * to_j[y.node];
          }
        }
        for (const Incidence& y : g.neighbors(j)) {
          to_j[y.node] = 0.0;
          in_j[y.node] = 0;
        }
        const double di = static_cast<double>(g.degree(i));
        const double dj = static_cast<double>(g.degree(j));
        const double bound = (std::min(di, dj) - 1.0) + (di - 1.0) * (dj - 1.0);
        next[e] = bound > 0.0 ? (triangles + rectangles) / bound : 0.0;
      });
    });
    w.swap(next);
  }
  return {std::move(w)};
}

namespace {

using SparseRow = std::vector<std::pair<NodeId, double>>;

/// Sparse rows of sum_{x in steps} T^x for the row-normalized weighted
/// adjacency T. With `only_last` the sum collapses to the single power T^steps.
std::vector<SparseRow> walk_rows(const Graph& g, std::span<const double> w, int steps,
                                 bool only_last) {
  const std::size_t n = g.node_count();
  std::vector<double> out_weight(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    for (const Incidence& inc : g.neighbors(i)) out_weight[i] += w[inc.edge];
  }
  std::vector<SparseRow> rows(n);
  parallel_region([&](auto&& for_each_index) {
    std::vector<double> cur(n, 0.0), nxt(n, 0.0), acc(n, 0.0);
    std::vector<NodeId> cur_nz, nxt_nz, acc_nz;
    std::vector<char> in_nxt(n, 0), in_acc(n, 0);
    for_each_index(n, [&](std::size_t src) {
      cur_nz.assign(1, static_cast<NodeId>(src));
      cur[src] = 1.0;
      for (int step = 1; step <= steps; ++step) {
        for (NodeId k : cur_nz) {
          const double mass = cur[k];
          if (mass == 0.0 || out_weight[k] == 0.0) continue;
          const double scale = mass / out_weight[k];
          for (const Incidence& inc : g.neighbors(k)) {
            const double p = scale * w[inc.edge];
            if (p == 0.0) continue;
            if (!in_nxt[inc.node]) {
              in_nxt[inc.node] = 1;
              nxt_nz.push_back(inc.node);
            }
            nxt[inc.node] += p;
          }
        }
        for (NodeId k : cur_nz) cur[k] = 0.0;
        cur_nz.clear();
        for (NodeId k : nxt_nz) {
          in_nxt[k] = 0;
          cur[k] = nxt[k];
          nxt[k] = 0.0;
          if (!only_last || step == steps) {
            if (!in_acc[k]) {
              in_acc[k] = 1;
              acc_nz.push_back(k);
            }
            acc[k] += cur[k];
          }
        }
        cur_nz.swap(nxt_nz);
      }
      for (NodeId k : cur_nz) cur[k] = 0.0;
      cur_nz.clear();
      std::sort(acc_nz.begin(), acc_nz.end());
      SparseRow& row = rows[src];
      row.reserve(acc_nz.size());
      for (NodeId k : acc_nz) {
        row.emplace_back(k, acc[k]);
        acc[k] = 0.0;
        in_acc[k] = 0;
      }
      acc_nz.clear();
    });
  });
  return rows;
}

double sparse_dot(const SparseRow& a, const SparseRow& b) {
  double dot = 0.0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return dot;
}

}  // namespace

NodeSimilarity rww_weights(const Graph& g, int ell, int iterations) {
  if (ell < 1) throw ValidationError("random walk weighting: ell must be >= 1");
  if (iterations < 1) throw ValidationError("random walk weighting: iterations must be >= 1");
  const std::size_t m = g.edge_count();
  std::vector<double> w(m);
  for (EdgeId e = 0; e < m; ++e) w[e] = g.edge(e).w;

  for (int round = 0; round < iterations; ++round) {
    const std::vector<SparseRow> rows = walk_rows(g, w, ell, false);
    std::vector<double> norms(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) norms[i] = std::sqrt(sparse_dot(rows[i], rows[i]));
    std::vector<double> next(m, 0.0);
    parallel_for(m, [&](std::size_t e) {
      const Edge& edge = g.edge(static_cast<EdgeId>(e));
      const double denom = norms[edge.u] * norms[edge.v];
      if (denom == 0.0) return;
      next[e] = std::min(1.0, sparse_dot(rows[edge.u], rows[edge.v]) / denom);
    });
    w.swap(next);
  }
  return {std::move(w)};
}

namespace {

/// s_t(a, b) by direct recursion over neighbor pairs, memoized per level.
class SimRankMemo {
 public:
  SimRankMemo(const Graph& g, int t, std::size_t budget) : g_(g), budget_(budget), memo_(t + 1) {}

  double value(int level, NodeId a, NodeId b) {
    if (level == 0) return a == b ? 1.0 : 0.0;
    if (a > b) std::swap(a, b);
    if (level == 1) return first_level(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto& table = memo_[static_cast<std::size_t>(level)];
    if (auto it = table.find(key); it != table.end()) return it->second;
    double sum = 0.0;
    for (const Incidence& x : g_.neighbors(a)) {
      for (const Incidence& y : g_.neighbors(b)) sum += value(level - 1, x.node, y.node);
    }
    const double s = sum / static_cast<double>(g_.degree(a) * g_.degree(b));
    if (++stored_ > budget_) {
      throw ResourceLimitError("simrank: memo exceeds pair budget of " + std::to_string(budget_));
    }
    table.emplace(key, s);
    return s;
  }

 private:
  // s_1(a, b) = |N(a) & N(b)| / (d_a d_b).
  double first_level(NodeId a, NodeId b) const {
    auto na = g_.neighbors(a), nb = g_.neighbors(b);
    std::size_t common = 0;
    auto ia = na.begin(), ib = nb.begin();
    while (ia != na.end() && ib != nb.end()) {
      if (ia->node < ib->node) {
        ++ia;
      } else if (ib->node < ia->node) {
        ++ib;
      } else {
        ++common;
        ++ia;
        ++ib;
      }
    }
    return static_cast<double>(common) / static_cast<double>(na.size() * nb.size());
  }

  const Graph& g_;
  std::size_t budget_;
  std::size_t stored_ = 0;
  std::vector<std::unordered_map<std::uint64_t, double>> memo_;
};

}  // namespace

NodeSimilarity simrank_memoized(const Graph& g, int t, std::size_t pair_budget) {
  if (t < 1) throw ValidationError("simrank: t must be >= 1");
  SimRankMemo memo(g, t, pair_budget);
  std::vector<double> scores(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    scores[e] = memo.value(t, g.edge(e).u, g.edge(e).v);
  }
  return {std::move(scores)};
}

NodeSimilarity simrank_weights(const Graph& g, int t, std::size_t pair_budget) {
  if (t < 1) throw ValidationError("simrank: t must be >= 1");
  // With s_0 = I the recursion unrolls to S_t = W^t (W^t)^T, W = D^-1 A
  // (structural), so s_t(i, j) is the dot product of two t-step walk rows.
  const Graph& base = g;
  std::vector<double> unit(base.edge_count(), 1.0);
  const std::vector<SparseRow> rows = walk_rows(base, unit, t, true);
  std::size_t stored = 0;
  for (const SparseRow& r : rows) stored += r.size();
  if (stored > pair_budget) {
    throw ResourceLimitError("simrank: walk rows exceed pair budget of " + std::to_string(pair_budget));
  }
  std::vector<double> scores(g.edge_count());
  parallel_for(g.edge_count(), [&](std::size_t e) {
    const Edge& edge = g.edge(static_cast<EdgeId>(e));
    scores[e] = sparse_dot(rows[edge.u], rows[edge.v]);
  });
  return {std::move(scores)};
}

}  // namespace gslc
