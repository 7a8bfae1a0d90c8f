#include "gslc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "gslc/error.hpp"
#include "gslc/random.hpp"

namespace gslc {

namespace {

struct Layout {
  std::size_t outliers;
  std::size_t overlapping;
  std::size_t slots;  ///< total community memberships
};

Layout layout_of(const PlantedConfig& cfg) {
  Layout l;
  l.outliers = static_cast<std::size_t>(std::llround(cfg.outlier_fraction * static_cast<double>(cfg.n)));
  const std::size_t members = cfg.n - std::min(cfg.n, l.outliers);
  l.overlapping = static_cast<std::size_t>(std::llround(cfg.overlap_fraction * static_cast<double>(members)));
  l.slots = members + l.overlapping * static_cast<std::size_t>(std::max(cfg.memberships - 1, 0));
  return l;
}

std::vector<std::size_t> sample_sizes(const PlantedConfig& cfg, std::size_t slots, Rng& rng) {
  if (!cfg.community_sizes.empty()) return cfg.community_sizes;
  std::vector<double> weights;
  for (std::size_t s = cfg.min_size; s <= cfg.max_size; ++s) {
    weights.push_back(std::pow(static_cast<double>(s), -cfg.size_exponent));
  }
  std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  while (total < slots) {
    std::size_t s = cfg.min_size + draw(rng);
    s = std::min(s, slots - total);
    if (s < cfg.min_size) {
      // Too few slots left for another community: spread them over the
      // existing ones.
      for (std::size_t k = 0; total < slots; ++k, ++total) ++sizes[k % sizes.size()];
      break;
    }
    sizes.push_back(s);
    total += s;
  }
  return sizes;
}

}  // namespace

void validate(const PlantedConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ValidationError("invalid benchmark config: " + msg); };
  if (cfg.n < 2) fail("n must be >= 2");
  if (!(cfg.mu >= 0.0 && cfg.mu < 1.0)) fail("mu must lie in [0, 1)");
  if (!(cfg.outlier_fraction >= 0.0 && cfg.outlier_fraction < 1.0)) fail("outlier fraction must lie in [0, 1)");
  if (!(cfg.overlap_fraction >= 0.0 && cfg.overlap_fraction < 1.0)) fail("overlap fraction must lie in [0, 1)");
  if (cfg.memberships < 2) fail("overlapping nodes need at least 2 memberships");
  if (!(cfg.mean_degree >= 2.0)) fail("mean degree must be >= 2");
  if (cfg.mean_degree >= static_cast<double>(cfg.n)) fail("mean degree must be below n");
  const Layout l = layout_of(cfg);
  if (cfg.community_sizes.empty()) {
    if (cfg.min_size < 2) fail("minimum community size must be >= 2");
    if (cfg.max_size < cfg.min_size) fail("maximum community size below minimum");
    if (!(cfg.size_exponent >= 0.0)) fail("size exponent must be >= 0");
    if (l.slots < cfg.min_size) fail("community nodes cannot fill a single community of minimum size");
  } else {
    std::size_t total = 0;
    for (std::size_t s : cfg.community_sizes) {
      if (s < 2) fail("community sizes must be >= 2");
      total += s;
    }
    if (total != l.slots) {
      fail("community sizes sum to " + std::to_string(total) + " but " + std::to_string(l.slots) +
           " memberships are needed");
    }
    if (l.overlapping > 0 && cfg.community_sizes.size() < static_cast<std::size_t>(cfg.memberships)) {
      fail("fewer communities than memberships per overlapping node");
    }
  }
}

Benchmark generate(const PlantedConfig& cfg) {
  validate(cfg);
  const Layout layout = layout_of(cfg);
  Rng rng(cfg.seed);

  std::vector<std::size_t> sizes = sample_sizes(cfg, layout.slots, rng);
  if (layout.overlapping > 0 && sizes.size() < static_cast<std::size_t>(cfg.memberships)) {
    throw ValidationError("invalid benchmark config: fewer communities than memberships per overlapping node");
  }

  std::vector<NodeId> perm(cfg.n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<char> is_outlier(cfg.n, 0);
  for (std::size_t k = 0; k < layout.outliers; ++k) is_outlier[perm[k]] = 1;

  std::vector<NodeId> tokens;
  tokens.reserve(layout.slots);
  for (std::size_t k = layout.outliers; k < cfg.n; ++k) {
    const bool overlapping = k < layout.outliers + layout.overlapping;
    const int copies = overlapping ? cfg.memberships : 1;
    for (int c = 0; c < copies; ++c) tokens.push_back(perm[k]);
  }
  std::shuffle(tokens.begin(), tokens.end(), rng);

  std::vector<std::vector<NodeId>> comms(sizes.size());
  for (std::size_t c = 0, at = 0; c < sizes.size(); ++c) {
    comms[c].assign(tokens.begin() + static_cast<std::ptrdiff_t>(at),
                    tokens.begin() + static_cast<std::ptrdiff_t>(at + sizes[c]));
    at += sizes[c];
  }

  // Repair repeated memberships of overlapping nodes by swapping tokens.
  auto contains = [&](std::size_t c, NodeId v) {
    return std::find(comms[c].begin(), comms[c].end(), v) != comms[c].end();
  };
  std::uniform_int_distribution<std::size_t> pick_comm(0, comms.size() - 1);
  for (std::size_t c = 0; c < comms.size(); ++c) {
    for (std::size_t pos = 0; pos < comms[c].size(); ++pos) {
      const NodeId v = comms[c][pos];
      if (std::find(comms[c].begin(), comms[c].begin() + static_cast<std::ptrdiff_t>(pos), v) ==
          comms[c].begin() + static_cast<std::ptrdiff_t>(pos)) {
        continue;
      }
      bool fixed = false;
      for (int attempt = 0; attempt < 10000 && !fixed; ++attempt) {
        const std::size_t c2 = pick_comm(rng);
        if (c2 == c || contains(c2, v)) continue;
        const std::size_t pos2 = std::uniform_int_distribution<std::size_t>(0, comms[c2].size() - 1)(rng);
        const NodeId u = comms[c2][pos2];
        if (contains(c, u)) continue;
        std::swap(comms[c][pos], comms[c2][pos2]);
        fixed = true;
      }
      if (!fixed) throw ValidationError("invalid benchmark config: cannot place overlapping memberships");
    }
  }

  std::vector<std::vector<std::uint32_t>> owned(cfg.n);
  for (std::size_t c = 0; c < comms.size(); ++c) {
    for (NodeId v : comms[c]) owned[v].push_back(static_cast<std::uint32_t>(c));
  }

  std::vector<Edge> edges;
  const double half = cfg.mean_degree / 2.0;
  const auto base_budget = static_cast<std::size_t>(std::floor(half));
  const double extra = half - std::floor(half);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> anyone(0, cfg.n - 2);
  for (NodeId v = 0; v < cfg.n; ++v) {
    std::size_t budget = base_budget + (unit(rng) < extra ? 1 : 0);
    budget = std::max<std::size_t>(budget, 1);
    for (std::size_t b = 0; b < budget; ++b) {
      NodeId target;
      if (is_outlier[v] || unit(rng) < cfg.mu) {
        target = static_cast<NodeId>(anyone(rng));
        if (target >= v) ++target;  // uniform over everyone but v
      } else {
        const auto& mine = owned[v];
        const auto& members = comms[mine[std::uniform_int_distribution<std::size_t>(0, mine.size() - 1)(rng)]];
        do {
          target = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
        } while (target == v);
      }
      edges.push_back({v, target, 1.0});
    }
  }

  Benchmark out;
  out.graph = Graph::from_edges(cfg.n, std::move(edges));
  for (auto& c : comms) {
    std::sort(c.begin(), c.end());
    out.truth.labels.push_back(std::move(c));
  }
  for (NodeId v = 0; v < cfg.n; ++v) {
    if (is_outlier[v]) out.truth.outliers.push_back(v);
  }
  return out;
}

double intra_edge_fraction(const Graph& g, const GroundTruth& truth) {
  if (g.edge_count() == 0) return 0.0;
  std::vector<std::vector<std::uint32_t>> owned(g.node_count());
  for (std::size_t c = 0; c < truth.labels.size(); ++c) {
    for (NodeId v : truth.labels[c]) owned[v].push_back(static_cast<std::uint32_t>(c));
  }
  for (auto& o : owned) std::sort(o.begin(), o.end());
  std::size_t intra = 0;
  for (const Edge& e : g.edges()) {
    const auto& a = owned[e.u];
    const auto& b = owned[e.v];
    std::vector<std::uint32_t> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (!both.empty()) ++intra;
  }
  return static_cast<double>(intra) / static_cast<double>(g.edge_count());
}

GroundTruth read_ground_truth(std::istream& in, const LabeledGraph& graph) {
  GroundTruth truth;
  std::vector<char> labeled(graph.graph.node_count(), 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<NodeId> members;
    for (std::string tok; fields >> tok;) {
      Label label = 0;
      std::size_t used = 0;
      try {
        label = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("invalid node label '" + tok + "'", line_no);
      }
      if (used != tok.size()) throw ParseError("invalid node label '" + tok + "'", line_no);
      const std::int64_t id = graph.id_of(label);
      if (id < 0) {
        throw ValidationError("line " + std::to_string(line_no) + ": node label " + tok +
                              " is not in the graph");
      }
      members.push_back(static_cast<NodeId>(id));
    }
    if (members.empty()) continue;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (NodeId v : members) labeled[v] = 1;
    truth.labels.push_back(std::move(members));
  }
  for (NodeId v = 0; v < graph.graph.node_count(); ++v) {
    if (!labeled[v]) truth.outliers.push_back(v);
  }
  return truth;
}

}  // namespace gslc
