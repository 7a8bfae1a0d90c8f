#include "gslc/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "gslc/error.hpp"

namespace gslc {

namespace {

void normalize(std::vector<ItemId>& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

PairScores from_counts(std::size_t common, std::size_t cluster_size, std::size_t label_size) {
  PairScores s;
  s.precision = static_cast<double>(common) / static_cast<double>(cluster_size);
  s.recall = static_cast<double>(common) / static_cast<double>(label_size);
  if (common > 0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

PairScores pair_scores(std::vector<ItemId> cluster, std::vector<ItemId> label) {
  if (cluster.empty() || label.empty()) throw ValidationError("pair scores need non-empty sets");
  normalize(cluster);
  normalize(label);
  std::vector<ItemId> common;
  std::set_intersection(cluster.begin(), cluster.end(), label.begin(), label.end(),
                        std::back_inserter(common));
  return from_counts(common.size(), cluster.size(), label.size());
}

double coverage(const ItemSets& clusters, std::size_t item_count) {
  if (item_count == 0) return 0.0;
  std::vector<char> covered(item_count, 0);
  std::size_t count = 0;
  for (const auto& c : clusters) {
    for (ItemId x : c) {
      if (x >= item_count) throw ValidationError("cluster member outside the item universe");
      if (!covered[x]) {
        covered[x] = 1;
        ++count;
      }
    }
  }
  return static_cast<double>(count) / static_cast<double>(item_count);
}

EvaluationReport weighted_scores(const ItemSets& clusters, const ItemSets& labels,
                                 std::size_t item_count) {
  if (labels.empty()) throw ValidationError("evaluation needs at least one label");
  EvaluationReport report;
  report.coverage = coverage(clusters, item_count);
  report.clusters = clusters.size();
  if (clusters.empty()) {
    report.empty_prediction = true;
    return report;
  }

  // Labels containing each item.
  std::vector<std::vector<std::uint32_t>> memberships(item_count);
  std::vector<std::size_t> label_size(labels.size(), 0);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    std::vector<ItemId> set = labels[l];
    normalize(set);
    if (set.empty()) throw ValidationError("evaluation labels must be non-empty");
    label_size[l] = set.size();
    for (ItemId x : set) {
      if (x >= item_count) throw ValidationError("label member outside the item universe");
      memberships[x].push_back(static_cast<std::uint32_t>(l));
    }
  }

  std::vector<std::size_t> common(labels.size(), 0);
  std::vector<std::uint32_t> touched;
  double weight = 0.0, p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
  for (const auto& raw : clusters) {
    std::vector<ItemId> c = raw;
    normalize(c);
    if (c.empty()) throw ValidationError("predicted clusters must be non-empty");
    report.max_cluster = std::max(report.max_cluster, c.size());
    touched.clear();
    for (ItemId x : c) {
      for (std::uint32_t l : memberships[x]) {
        if (common[l]++ == 0) touched.push_back(l);
      }
    }
    // Labels with no overlap score 0 on every metric.
    PairScores best;
    for (std::uint32_t l : touched) {
      const PairScores s = from_counts(common[l], c.size(), label_size[l]);
      best.precision = std::max(best.precision, s.precision);
      best.recall = std::max(best.recall, s.recall);
      best.f1 = std::max(best.f1, s.f1);
      common[l] = 0;
    }
    const double size = static_cast<double>(c.size());
    weight += size;
    p_sum += size * best.precision;
    r_sum += size * best.recall;
    f_sum += size * best.f1;
  }
  report.precision = p_sum / weight;
  report.recall = r_sum / weight;
  report.f1 = f_sum / weight;
  return report;
}

std::string to_key_value(const EvaluationReport& r) {
  std::string out;
  out += "precision=" + format_number(r.precision) + "\n";
  out += "recall=" + format_number(r.recall) + "\n";
  out += "f1=" + format_number(r.f1) + "\n";
  out += "coverage=" + format_number(r.coverage) + "\n";
  out += "clusters=" + std::to_string(r.clusters) + "\n";
  out += "max_cluster=" + std::to_string(r.max_cluster) + "\n";
  out += std::string("empty_prediction=") + (r.empty_prediction ? "true" : "false") + "\n";
  return out;
}

std::string report_csv_header() { return "precision,recall,f1,coverage,clusters,max_cluster,empty_prediction"; }

std::string to_csv_row(const EvaluationReport& r) {
  return format_number(r.precision) + "," + format_number(r.recall) + "," + format_number(r.f1) + "," +
         format_number(r.coverage) + "," + std::to_string(r.clusters) + "," +
         std::to_string(r.max_cluster) + "," + (r.empty_prediction ? "1" : "0");
}

}  // namespace gslc
