#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lalita/bitext.hpp"
#include "lalita/features.hpp"
#include "lalita/jenks.hpp"
#include "lalita/sampler.hpp"

namespace lalita {

struct AnalysisReport {
    std::string json;
    std::string histograms_tsv;  // feature, cluster, value, count, percent
};

// Cluster shares, boundaries, per-cluster token budgets and mean sentence
// length, percentage histograms of the requested features, and optionally the
// cluster distribution of an externally scored set.
// pairs, scores and vectors are parallel (same sentences, same order).
AnalysisReport report_clusters(const std::vector<BitextPair>& pairs,
                               const std::vector<double>& scores, const ClusterModel& model,
                               const std::vector<FeatureVector>& vectors,
                               const FeatureSchema& schema,
                               const std::vector<std::string>& features,
                               const std::optional<std::vector<double>>& external_scores);

} // namespace lalita
