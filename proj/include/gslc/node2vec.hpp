#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gslc/graph.hpp"
#include "gslc/node_similarity.hpp"

namespace gslc {

struct WalkParams {
  double p = 1.0;  ///< return parameter
  double q = 1.0;  ///< in-out parameter
  int walks_per_node = 40;
  int walk_length = 80;  ///< steps per walk
};

/// Line-graph runs use shorter sampling.
inline WalkParams line_graph_walk_params() { return {1.0, 1.0, 10, 20}; }

/// Walks stored back to back; walk k is nodes[offsets[k], offsets[k + 1]).
struct WalkCorpus {
  std::vector<NodeId> nodes;
  std::vector<std::size_t> offsets{0};

  std::size_t size() const noexcept { return offsets.size() - 1; }
  std::span<const NodeId> walk(std::size_t k) const {
    return {nodes.data() + offsets[k], nodes.data() + offsets[k + 1]};
  }
};

/// Second-order biased walks. Each step from v (arrived from t) picks x with
/// probability proportional to w(v, x) * a(t, x), where a is 1/p for x == t,
/// 1 when x neighbors t and 1/q otherwise. Isolated nodes get no walks.
WalkCorpus sample_walks(const Graph& g, const WalkParams& params, std::uint64_t seed);

struct SgnsParams {
  int dim = 16;
  int window = 10;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  /// Worker threads. Values above 1 train lock-free and are not reproducible.
  int threads = 1;
};

/// One vector per node; isolated nodes carry no vector.
struct Embedding {
  int dim = 0;
  std::vector<float> values;  ///< row-major, node_count x dim
  std::vector<char> present;

  std::size_t node_count() const noexcept { return present.size(); }
  std::span<const float> vector(NodeId i) const {
    return {values.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// Skip-gram with negative sampling over a walk corpus, trainable one epoch
/// at a time so callers can watch the loss.
class SkipGramTrainer {
 public:
  SkipGramTrainer(const WalkCorpus& corpus, std::size_t node_count, const SgnsParams& params,
                  std::uint64_t seed);

  void train_epoch();
  int epochs_done() const noexcept { return epoch_; }

  /// -log sigmoid(in(center) . out(context)).
  double pair_loss(NodeId center, NodeId context) const;

  Embedding embedding() const;

 private:
  template <bool Shared>
  void train_range(std::size_t first_walk, std::size_t last_walk, std::uint64_t stream);

  const WalkCorpus& corpus_;
  SgnsParams params_;
  std::uint64_t seed_;
  std::size_t node_count_;
  std::size_t tokens_ = 0;
  int epoch_ = 0;
  std::vector<float> input_;
  std::vector<float> output_;
  std::vector<NodeId> noise_table_;
  std::vector<char> present_;
};

Embedding train_sgns(const WalkCorpus& corpus, std::size_t node_count, const SgnsParams& params,
                     std::uint64_t seed);

/// s(i, j) = 1 / (1 + ||v(i) - v(j)||_2). Throws ValidationError when an
/// endpoint has no vector.
NodeSimilarity n2v_edge_weights(const Graph& g, const Embedding& emb);

/// Walks and training.
Embedding node2vec_embedding(const Graph& g, const WalkParams& walks, const SgnsParams& sgns,
                             std::uint64_t seed);

/// Walks, training and edge scoring in one call.
NodeSimilarity node2vec_weights(const Graph& g, const WalkParams& walks, const SgnsParams& sgns,
                                std::uint64_t seed);

}  // namespace gslc
