#include "lalita/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"

namespace lalita {

AnalysisReport report_clusters(const std::vector<BitextPair>& pairs,
                               const std::vector<double>& scores, const ClusterModel& model,
                               const std::vector<FeatureVector>& vectors,
                               const FeatureSchema& schema,
                               const std::vector<std::string>& features,
                               const std::optional<std::vector<double>>& external_scores) {
    const std::size_t n = pairs.size();
    if (scores.size() != n || vectors.size() != n)
        throw UsageError("report inputs must be parallel: " + std::to_string(n) + " pairs, " +
                         std::to_string(scores.size()) + " scores, " +
                         std::to_string(vectors.size()) + " vectors");
    for (std::size_t i = 0; i < n; ++i)
        if (pairs[i].id != vectors[i].id)
            throw DataError("report inputs out of order: pair '" + pairs[i].id +
                            "' vs vector '" + vectors[i].id + "'");

    std::vector<std::size_t> feature_idx;
    for (const auto& f : features) {
        auto idx = schema.index_of(f);
        if (!idx) throw UsageError("unknown feature name '" + f + "'");
        feature_idx.push_back(*idx);
    }
    const std::size_t len_idx = *schema.index_of("sentenceLength");

    const auto k = static_cast<std::size_t>(model.k);
    std::vector<std::uint64_t> counts(k, 0);
    std::vector<int> labels(n);
    std::vector<std::vector<BitextPair>> by_cluster(k);
    std::vector<double> len_sum(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = assign_cluster(model, scores[i]);
        const auto c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        by_cluster[c].push_back(pairs[i]);
        len_sum[c] += vectors[i].values[len_idx];
    }

    nlohmann::json j;
    j["format"] = "lalita-report";
    j["version"] = 1;
    nlohmann::json cl;
    cl["k"] = model.k;
    cl["breaks"] = model.breaks;
    cl["fit_min"] = model.fit_min;
    cl["fit_max"] = model.fit_max;
    cl["counts"] = counts;
    std::vector<double> shares;
    for (std::uint64_t c : counts)
        shares.push_back(n > 0 ? 100.0 * static_cast<double>(c) / static_cast<double>(n) : 0.0);
    cl["shares_percent"] = shares;
    if (std::isnan(model.silhouette))
        cl["silhouette"] = nullptr;
    else
        cl["silhouette"] = model.silhouette;
    cl["silhouette_sample"] = model.silhouette_sample;
    std::vector<double> mean_len;
    nlohmann::json tokens = nlohmann::json::array();
    for (std::size_t c = 0; c < k; ++c) {
        mean_len.push_back(counts[c] > 0 ? len_sum[c] / static_cast<double>(counts[c]) : 0.0);
        const TokenBudget tb = token_budget(by_cluster[c]);
        tokens.push_back({{"source", tb.source}, {"target", tb.target}});
    }
    cl["mean_sentence_length"] = mean_len;
    cl["tokens"] = tokens;
    j["clusters"] = cl;

    std::string tsv = "feature\tcluster\tvalue\tcount\tpercent\n";
    nlohmann::json hists = nlohmann::json::object();
    for (std::size_t fi = 0; fi < features.size(); ++fi) {
        const std::size_t idx = feature_idx[fi];
        nlohmann::json per_cluster = nlohmann::json::array();
        for (std::size_t c = 0; c < k; ++c) {
            std::map<double, std::uint64_t> bins;
            for (std::size_t i = 0; i < n; ++i)
                if (static_cast<std::size_t>(labels[i]) == c) ++bins[vectors[i].values[idx]];
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& [value, count] : bins) {
                const double pct =
                    100.0 * static_cast<double>(count) / static_cast<double>(counts[c]);
                rows.push_back({{"value", value}, {"count", count}, {"percent", pct}});
                tsv += features[fi] + "\t" + std::to_string(c) + "\t" + format_double(value) +
                       "\t" + std::to_string(count) + "\t" + format_double(pct) + "\n";
            }
            per_cluster.push_back(rows);
        }
        hists[features[fi]] = per_cluster;
    }
    j["histograms"] = hists;

    if (external_scores) {
        std::vector<std::uint64_t> ext_counts(k, 0);
        for (double s : *external_scores)
            ++ext_counts[static_cast<std::size_t>(assign_cluster(model, s))];
        std::vector<double> ext_shares;
        for (std::uint64_t c : ext_counts)
            ext_shares.push_back(external_scores->empty()
                                     ? 0.0
                                     : 100.0 * static_cast<double>(c) /
                                           static_cast<double>(external_scores->size()));
        j["external"] = {{"counts", ext_counts}, {"shares_percent", ext_shares}};
    }

    AnalysisReport report;
    report.json = j.dump(2);
    report.histograms_tsv = std::move(tsv);
    return report;
}

} // namespace lalita
