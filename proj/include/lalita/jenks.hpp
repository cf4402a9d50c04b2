#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lalita {

// Contiguous-interval partition of univariate scores. Breaks are
// upper-exclusive boundaries: a score equal to a break belongs to the
// higher cluster. Cluster indices ascend with score.
struct ClusterModel {
    int k = 0;
    std::vector<double> breaks;         // k-1 strictly increasing values
    std::vector<std::uint64_t> counts;  // fit-corpus size of each cluster
    double fit_min = 0.0, fit_max = 0.0;
    double silhouette = 0.0;            // NaN when not computed (k == 1)
    std::uint64_t silhouette_sample = 0;

    std::string to_json() const;
    static ClusterModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static ClusterModel load(const std::string& path);
};

// Exact DP optimum minimizing within-class sum of squared deviations over
// contiguous partitions of the sorted data; ties resolved to the
// lexicographically earliest break positions. silhouette fields are left
// unset; see fit_cluster_model.
ClusterModel jenks_breaks(const std::vector<double>& scores, int k);

int assign_cluster(const ClusterModel& model, double score);

// Mean of (b-a)/max(a,b) under 1-D absolute distance; singleton-cluster
// points contribute 0. Above `subsample_threshold` points, computed on a
// seeded uniform subsample whose size is reported via sample_out.
double silhouette(const std::vector<double>& scores, const std::vector<int>& labels,
                  std::size_t subsample_threshold = 10000, std::uint64_t seed = 12345,
                  std::uint64_t* sample_out = nullptr);

// jenks_breaks plus silhouette of the fit assignment (k >= 2).
ClusterModel fit_cluster_model(const std::vector<double>& scores, int k,
                               std::size_t subsample_threshold = 10000,
                               std::uint64_t silhouette_seed = 12345);

} // namespace lalita
