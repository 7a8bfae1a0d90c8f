#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gslc/hslc.hpp"

namespace gslc {

using ItemSets = std::vector<std::vector<ItemId>>;

struct PairScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// p = |C & L| / |C|, r = |C & L| / |L|, F1 their harmonic mean (0 when both
/// are 0). Duplicates are ignored. Throws ValidationError if either is empty.
PairScores pair_scores(std::vector<ItemId> cluster, std::vector<ItemId> label);

/// Size-weighted averages of each cluster's best precision, best recall and
/// best F1 against the labels, with the maxima taken independently.
struct EvaluationReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double coverage = 0.0;
  std::size_t clusters = 0;
  std::size_t max_cluster = 0;
  bool empty_prediction = false;  ///< no clusters; all scores are 0
};

/// `item_count` is the size of the universe used for coverage. Throws
/// ValidationError for empty labels, an empty cluster, or out-of-range items.
EvaluationReport weighted_scores(const ItemSets& clusters, const ItemSets& labels,
                                 std::size_t item_count);

/// Fraction of the item_count items that belong to at least one cluster.
double coverage(const ItemSets& clusters, std::size_t item_count);

/// "precision=0.666667\n..." one key per line.
std::string to_key_value(const EvaluationReport& report);
std::string report_csv_header();
std::string to_csv_row(const EvaluationReport& report);

}  // namespace gslc
