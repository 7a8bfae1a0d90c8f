#include "gslc/node2vec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "gslc/error.hpp"
#include "gslc/random.hpp"

namespace gslc {

namespace {

bool adjacent(const Graph& g, NodeId a, NodeId b) {
  auto adj = g.neighbors(a);
  return std::binary_search(adj.begin(), adj.end(), Incidence{b, 0},
                            [](const Incidence& x, const Incidence& y) { return x.node < y.node; });
}

/// Walker with per-node cumulative weights for the unbiased (p = q = 1) case.
class Walker {
 public:
  Walker(const Graph& g, const WalkParams& params) : g_(g), params_(params) {
    first_order_ = params.p == 1.0 && params.q == 1.0;
    if (first_order_) {
      cumulative_.resize(2 * g.edge_count());
      for (NodeId v = 0; v < g.node_count(); ++v) {
        double run = 0.0;
        std::size_t k = offset(v);
        for (const Incidence& inc : g.neighbors(v)) {
          run += g.edge(inc.edge).w;
          cumulative_[k++] = run;
        }
      }
    }
  }

  void walk(NodeId start, Rng& rng, std::vector<NodeId>& out) const {
    out.push_back(start);
    std::int64_t prev = -1;
    NodeId cur = start;
    for (int s = 0; s < params_.walk_length; ++s) {
      const std::int64_t next = first_order_ || prev < 0 ? step_first_order(cur, rng)
                                                          : step_biased(static_cast<NodeId>(prev), cur, rng);
      if (next < 0) return;  // dead end
      prev = cur;
      cur = static_cast<NodeId>(next);
      out.push_back(cur);
    }
  }

 private:
  std::size_t offset(NodeId v) const {
    return static_cast<std::size_t>(g_.neighbors(v).data() - g_.neighbors(0).data());
  }

  std::int64_t step_first_order(NodeId cur, Rng& rng) const {
    auto adj = g_.neighbors(cur);
    if (adj.empty()) return -1;
    double total = 0.0;
    if (first_order_) {
      total = cumulative_[offset(cur) + adj.size() - 1];
    } else {
      for (const Incidence& inc : adj) total += g_.edge(inc.edge).w;
    }
    if (total <= 0.0) return -1;
    const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    if (first_order_) {
      auto begin = cumulative_.begin() + static_cast<std::ptrdiff_t>(offset(cur));
      auto end = begin + static_cast<std::ptrdiff_t>(adj.size());
      auto it = std::upper_bound(begin, end, r);
      if (it == end) --it;
      return adj[static_cast<std::size_t>(it - begin)].node;
    }
    double acc = 0.0;
    for (const Incidence& inc : adj) {
      acc += g_.edge(inc.edge).w;
      if (r < acc) return inc.node;
    }
    return adj.back().node;
  }

  std::int64_t step_biased(NodeId prev, NodeId cur, Rng& rng) const {
    auto adj = g_.neighbors(cur);
    weights_.resize(adj.size());
    double total = 0.0;
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const NodeId x = adj[k].node;
      double bias = 1.0 / params_.q;
      if (x == prev) {
        bias = 1.0 / params_.p;
      } else if (adjacent(g_, prev, x)) {
        bias = 1.0;
      }
      weights_[k] = g_.edge(adj[k].edge).w * bias;
      total += weights_[k];
    }
    if (total <= 0.0) return -1;
    double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      if (r < weights_[k]) return adj[k].node;
      r -= weights_[k];
    }
    return adj.back().node;
  }

  const Graph& g_;
  WalkParams params_;
  bool first_order_ = false;
  std::vector<double> cumulative_;
  static thread_local std::vector<double> weights_;
};

thread_local std::vector<double> Walker::weights_;

}  // namespace

WalkCorpus sample_walks(const Graph& g, const WalkParams& params, std::uint64_t seed) {
  if (!(params.p > 0.0) || !(params.q > 0.0)) throw ValidationError("node2vec: p and q must be > 0");
  if (params.walks_per_node < 1 || params.walk_length < 1) {
    throw ValidationError("node2vec: walks per node and walk length must be >= 1");
  }
  const Walker walker(g, params);
  std::vector<NodeId> starts;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) > 0) starts.push_back(v);
  }
  const std::size_t rounds = static_cast<std::size_t>(params.walks_per_node);
  const std::size_t total = rounds * starts.size();

  // Round r visits the nodes in its own shuffled order; walk k is seeded by (seed, k).
  std::vector<NodeId> schedule;
  schedule.reserve(total);
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<NodeId> order = starts;
    Rng rng(derive_seed(seed, r));
    std::shuffle(order.begin(), order.end(), rng);
    schedule.insert(schedule.end(), order.begin(), order.end());
  }

  std::vector<std::vector<NodeId>> walks(total);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(total); ++k) {
    Rng rng(derive_seed(seed ^ 0x6e6f64653276ULL, static_cast<std::uint64_t>(k)));
    auto& w = walks[static_cast<std::size_t>(k)];
    w.reserve(static_cast<std::size_t>(params.walk_length) + 1);
    walker.walk(schedule[static_cast<std::size_t>(k)], rng, w);
  }

  WalkCorpus corpus;
  corpus.offsets.reserve(total + 1);
  for (const auto& w : walks) {
    corpus.nodes.insert(corpus.nodes.end(), w.begin(), w.end());
    corpus.offsets.push_back(corpus.nodes.size());
  }
  return corpus;
}

namespace {

template <bool Shared>
inline float load(const float& x) {
  if constexpr (Shared) {
    return std::atomic_ref<float>(const_cast<float&>(x)).load(std::memory_order_relaxed);
  } else {
    return x;
  }
}

template <bool Shared>
inline void store(float& x, float v) {
  if constexpr (Shared) {
    std::atomic_ref<float>(x).store(v, std::memory_order_relaxed);
  } else {
    x = v;
  }
}

constexpr double kMaxLogit = 6.0;
constexpr int kNoiseTableBits = 24;

template <bool Shared>
inline void sgns_step(const float* in, float* out, float* grad, std::size_t dim, float label, float alpha) {
  float f = 0.0f;
  if constexpr (Shared) {
    for (std::size_t x = 0; x < dim; ++x) f += load<true>(in[x]) * load<true>(out[x]);
  } else {
    float part[4] = {0.0f, 0.0f, 0.0f, 0.0f};
    std::size_t x = 0;
    for (; x + 4 <= dim; x += 4) {
      for (std::size_t j = 0; j < 4; ++j) part[j] += in[x + j] * out[x + j];
    }
    for (; x < dim; ++x) part[0] += in[x] * out[x];
    f = (part[0] + part[1]) + (part[2] + part[3]);
  }
  float g;
  if (f > kMaxLogit) {
    g = (label - 1.0f) * alpha;
  } else if (f < -kMaxLogit) {
    g = label * alpha;
  } else {
    g = (label - 1.0f / (1.0f + std::exp(-f))) * alpha;
  }
  if constexpr (Shared) {
    for (std::size_t x = 0; x < dim; ++x) {
      const float o = load<true>(out[x]);
      grad[x] += g * o;
      store<true>(out[x], o + g * load<true>(in[x]));
    }
  } else {
    const float* __restrict src = in;
    float* __restrict dst = out;
    float* __restrict acc = grad;
    for (std::size_t x = 0; x < dim; ++x) {
      const float o = dst[x];
      acc[x] += g * o;
      dst[x] = o + g * src[x];
    }
  }
}

}  // namespace

SkipGramTrainer::SkipGramTrainer(const WalkCorpus& corpus, std::size_t node_count,
                                 const SgnsParams& params, std::uint64_t seed)
    : corpus_(corpus), params_(params), seed_(seed), node_count_(node_count) {
  if (params.dim < 1) throw ValidationError("skip-gram: dimension must be >= 1");
  if (params.window < 1 || params.negatives < 0 || params.epochs < 1 || params.threads < 1) {
    throw ValidationError("skip-gram: invalid window/negatives/epochs/threads");
  }
  if (corpus.nodes.empty()) throw ValidationError("skip-gram: corpus is empty");

  std::vector<double> counts(node_count, 0.0);
  present_.assign(node_count, 0);
  for (NodeId v : corpus.nodes) {
    if (v >= node_count) throw ValidationError("skip-gram: corpus node out of range");
    counts[v] += 1.0;
    present_[v] = 1;
  }
  tokens_ = corpus.nodes.size();
  // Unigram^0.75 table as in word2vec: one draw is one index lookup.
  double mass = 0.0;
  for (double& c : counts) mass += (c = std::pow(c, 0.75));
  noise_table_.resize(std::size_t{1} << kNoiseTableBits);
  double reached = 0.0;
  std::size_t v = 0, last = node_count - 1;
  while (counts[last] == 0.0) --last;
  for (std::size_t slot = 0; slot < noise_table_.size(); ++slot) {
    while (v < last &&
           (counts[v] == 0.0 || reached + counts[v] <= (static_cast<double>(slot) + 0.5) /
                                                            static_cast<double>(noise_table_.size()) * mass)) {
      reached += counts[v];
      ++v;
    }
    noise_table_[slot] = static_cast<NodeId>(v);
  }

  const std::size_t dim = static_cast<std::size_t>(params.dim);
  input_.resize(node_count * dim);
  output_.assign(node_count * dim, 0.0f);
  Rng rng(seed);
  std::uniform_real_distribution<float> init(-0.5f / static_cast<float>(dim),
                                             0.5f / static_cast<float>(dim));
  for (float& x : input_) x = init(rng);
}

template <bool Shared>
void SkipGramTrainer::train_range(std::size_t first_walk, std::size_t last_walk, std::uint64_t stream) {
  const std::size_t dim = static_cast<std::size_t>(params_.dim);
  Rng rng(derive_seed(seed_, stream));
  std::uniform_int_distribution<int> shrink(0, params_.window - 1);
  std::vector<float> grad(dim);

  const double total_tokens = static_cast<double>(tokens_) * params_.epochs;
  std::size_t done = corpus_.offsets[first_walk] + static_cast<std::size_t>(epoch_) * tokens_;

  for (std::size_t k = first_walk; k < last_walk; ++k) {
    auto walk = corpus_.walk(k);
    const double progress = static_cast<double>(done) / total_tokens;
    const float alpha = static_cast<float>(params_.learning_rate * std::max(1e-4, 1.0 - progress));
    done += walk.size();
    const auto len = static_cast<std::ptrdiff_t>(walk.size());
    for (std::ptrdiff_t pos = 0; pos < len; ++pos) {
      const NodeId center = walk[static_cast<std::size_t>(pos)];
      const int reach = params_.window - shrink(rng);
      float* in = input_.data() + static_cast<std::size_t>(center) * dim;
      for (std::ptrdiff_t c = std::max<std::ptrdiff_t>(0, pos - reach);
           c <= std::min<std::ptrdiff_t>(len - 1, pos + reach); ++c) {
        if (c == pos) continue;
        const NodeId context = walk[static_cast<std::size_t>(c)];
        std::fill(grad.begin(), grad.end(), 0.0f);
        for (int d = 0; d <= params_.negatives; ++d) {
          NodeId target = context;
          float label = 1.0f;
          if (d > 0) {
            target = noise_table_[rng() >> (64 - kNoiseTableBits)];
            if (target == context) continue;
            label = 0.0f;
          }
          float* out = output_.data() + static_cast<std::size_t>(target) * dim;
          sgns_step<Shared>(in, out, grad.data(), dim, label, alpha);
        }
        for (std::size_t x = 0; x < dim; ++x) store<Shared>(in[x], load<Shared>(in[x]) + grad[x]);
      }
    }
  }
}

void SkipGramTrainer::train_epoch() {
  const std::size_t walks = corpus_.size();
  const auto epoch_stream = static_cast<std::uint64_t>(epoch_) << 20;
  if (params_.threads == 1) {
    train_range<false>(0, walks, epoch_stream);
  } else {
    const std::size_t workers = static_cast<std::size_t>(params_.threads);
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t lo = walks * t / workers, hi = walks * (t + 1) / workers;
      pool.emplace_back([this, lo, hi, epoch_stream, t] { train_range<true>(lo, hi, epoch_stream + t); });
    }
  }
  ++epoch_;
}

double SkipGramTrainer::pair_loss(NodeId center, NodeId context) const {
  const std::size_t dim = static_cast<std::size_t>(params_.dim);
  double f = 0.0;
  for (std::size_t x = 0; x < dim; ++x) {
    f += static_cast<double>(input_[center * dim + x]) * output_[context * dim + x];
  }
  // -log(sigmoid(f)) = log(1 + e^-f)
  return f > 0.0 ? std::log1p(std::exp(-f)) : -f + std::log1p(std::exp(f));
}

Embedding SkipGramTrainer::embedding() const {
  Embedding e;
  e.dim = params_.dim;
  e.values = input_;
  e.present = present_;
  const std::size_t dim = static_cast<std::size_t>(params_.dim);
  for (std::size_t v = 0; v < node_count_; ++v) {
    if (!present_[v]) std::fill_n(e.values.begin() + static_cast<std::ptrdiff_t>(v * dim), dim, 0.0f);
  }
  return e;
}

Embedding train_sgns(const WalkCorpus& corpus, std::size_t node_count, const SgnsParams& params,
                     std::uint64_t seed) {
  SkipGramTrainer trainer(corpus, node_count, params, seed);
  for (int e = 0; e < params.epochs; ++e) trainer.train_epoch();
  return trainer.embedding();
}

NodeSimilarity n2v_edge_weights(const Graph& g, const Embedding& emb) {
  if (emb.node_count() != g.node_count()) {
    throw ValidationError("node2vec: embedding does not match graph node count");
  }
  std::vector<double> scores(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (!emb.present[edge.u] || !emb.present[edge.v]) {
      throw ValidationError("node2vec: missing embedding for node " +
                            std::to_string(emb.present[edge.u] ? edge.v : edge.u));
    }
    auto a = emb.vector(edge.u), b = emb.vector(edge.v);
    double sq = 0.0;
    for (std::size_t x = 0; x < a.size(); ++x) {
      const double d = static_cast<double>(a[x]) - static_cast<double>(b[x]);
      sq += d * d;
    }
    scores[e] = 1.0 / (1.0 + std::sqrt(sq));
  }
  return {std::move(scores)};
}

Embedding node2vec_embedding(const Graph& g, const WalkParams& walks, const SgnsParams& sgns,
                             std::uint64_t seed) {
  const WalkCorpus corpus = sample_walks(g, walks, seed);
  return train_sgns(corpus, g.node_count(), sgns, derive_seed(seed, 0x5347));
}

NodeSimilarity node2vec_weights(const Graph& g, const WalkParams& walks, const SgnsParams& sgns,
                                std::uint64_t seed) {
  return n2v_edge_weights(g, node2vec_embedding(g, walks, sgns, seed));
}

}  // namespace gslc
