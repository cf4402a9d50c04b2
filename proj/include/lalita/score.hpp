#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lalita/features.hpp"

namespace lalita {

// Standardize -> row-normalize -> centered PCA. The first component of the
// projection is the complexity score; its sign is anchored so that the
// sentenceLength loading is nonnegative.
struct ScoreModel {
    std::uint64_t schema_hash = 0;
    std::vector<std::string> feature_names;        // full schema order, size D
    std::vector<double> mean, stddev;              // per feature, size D
    std::vector<std::size_t> kept;                 // indices of features with stddev > 0
    std::vector<std::string> dropped;              // names of constant features
    std::vector<double> center;                    // processed-space mean, size |kept|
    std::vector<std::vector<double>> components;   // k rows x |kept| columns, orthonormal
    std::vector<double> explained_variance_ratio;  // size k, nonincreasing
    bool pc1_sign_flipped = false;

    std::size_t dimension() const { return feature_names.size(); }
    std::size_t n_components() const { return components.size(); }

    std::string to_json() const;
    static ScoreModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static ScoreModel load(const std::string& path);
};

struct ScoredSentence {
    std::string id;
    double lalita = 0.0;                // first component
    std::vector<double> extra;          // components 2..k
};

// Fits on >= 2 distinct vectors; k is clamped to the surviving dimension
// (with a warning on stderr) when it exceeds it.
ScoreModel fit_score_model(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema,
                           int k);

ScoredSentence score(const ScoreModel& model, const FeatureVector& v);

// (feature, |first-component coefficient|) over the full schema, dropped
// features at 0, sorted by descending magnitude then name.
std::vector<std::pair<std::string, double>> export_loadings(const ScoreModel& model);

void write_scores_tsv(const std::string& path, const std::vector<ScoredSentence>& scores);
// id -> score rows; extra components, when present, follow the first.
std::vector<ScoredSentence> read_scores_tsv(const std::string& path);

} // namespace lalita
