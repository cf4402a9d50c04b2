#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lalita/bitext.hpp"
#include "lalita/jenks.hpp"

namespace lalita {

// One a_b_c_d sampling recipe: percents per cluster (must sum to 100) and a
// total dataset size in sentence pairs.
struct CurationConfig {
    std::vector<double> percents;
    std::uint64_t tds = 0;
    std::uint64_t seed = 0;          // used only by the random baseline
    bool allow_augmentation = true;

    void validate(int k) const;
    // "a_b_c_d" using minimal decimal forms.
    std::string label() const;
};

struct ScoredPair {
    BitextPair pair;
    double score = 0.0;
};

// Pairs grouped by cluster, each cluster sorted by descending score with
// stable ties (original input order).
struct ClusteredCorpus {
    int k = 0;
    bool synthetic = false;
    std::vector<std::vector<ScoredPair>> clusters;

    static ClusteredCorpus build(const std::vector<BitextPair>& pairs,
                                 const std::vector<double>& scores, const ClusterModel& model,
                                 bool synthetic);
    std::size_t total() const;
};

struct TokenBudget {
    std::uint64_t source = 0;
    std::uint64_t target = 0;
};

TokenBudget token_budget(const std::vector<BitextPair>& pairs);

struct SampleManifest {
    std::vector<double> percents;
    std::uint64_t tds = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> quota;      // per cluster, sums to tds
    std::vector<std::uint64_t> real;       // per cluster
    std::vector<std::uint64_t> synthetic;  // per cluster
    TokenBudget tokens;

    std::string to_json() const;
};

struct SampleResult {
    std::vector<BitextPair> pairs;
    SampleManifest manifest;
};

// All distinct orderings of a percent multiset, lexicographically sorted.
std::vector<std::vector<double>> enumerate_configurations(const std::vector<double>& percents);

// Largest-remainder quotas summing exactly to tds; remainder ties go to the
// lower cluster index. weights are percents or raw counts.
std::vector<std::uint64_t> largest_remainder_quotas(const std::vector<double>& weights,
                                                    std::uint64_t tds);

// Top-score-first per-cluster draw; deficits are filled from the matching
// synthetic cluster when allowed, otherwise the call fails reporting every
// cluster's shortfall.
SampleResult sample_configuration(const ClusteredCorpus& corpus,
                                  const std::optional<ClusteredCorpus>& synthetic,
                                  const CurationConfig& cfg);

// Quotas proportional to the fit-corpus cluster counts recorded in `model`.
SampleResult baseline_proportional(const ClusteredCorpus& corpus, const ClusterModel& model,
                                   std::uint64_t tds);

// Uniform without replacement; output keeps the original corpus order.
std::vector<BitextPair> random_sample(const std::vector<BitextPair>& pairs, std::uint64_t tds,
                                      std::uint64_t seed);

enum class OrderStrategy { IncPCA, DecPCA, RS };

OrderStrategy parse_order_strategy(const std::string& name);

struct OrderResult {
    std::vector<ScoredPair> pairs;
    std::vector<std::uint64_t> cut_points;  // prefix sizes every `increment`, last = n
};

OrderResult stepwise_order(std::vector<ScoredPair> pairs, OrderStrategy strategy,
                           std::uint64_t increment, std::uint64_t seed);

} // namespace lalita
