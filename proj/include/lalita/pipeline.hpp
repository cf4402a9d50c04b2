#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lalita/filter.hpp"
#include "lalita/sampler.hpp"

namespace lalita {

// Whole-pipeline configuration, read from one JSON file. Relative paths are
// resolved against the config file's directory.
struct PipelineConfig {
    std::string bitext;             // required input TSV
    std::string conllu;             // required annotations
    std::string sidecar;            // optional extra id -> key=value;... TSV
    std::string synthetic_bitext;   // optional, enables deficit filling
    std::string synthetic_conllu;   // required when synthetic_bitext is set
    std::string out;                // required output directory

    FilterConfig filter;
    int lm_order = 5;
    int pca_k = 10;
    int cluster_k = 4;
    std::uint64_t silhouette_seed = 12345;
    std::uint64_t silhouette_subsample = 10000;

    std::vector<CurationConfig> configurations;
    std::optional<std::uint64_t> baseline_proportional_tds;
    std::optional<std::uint64_t> baseline_random_tds;
    std::uint64_t baseline_random_seed = 0;

    bool report_enabled = true;
    std::vector<std::string> report_features{"VERB", "sentenceLength"};
    std::string external_scores;    // optional scores TSV for the report

    static PipelineConfig from_json_text(const std::string& text, const std::string& base_dir);
    static PipelineConfig from_file(const std::string& path);

    // Canonical JSON of everything that influences artifact content (paths
    // replaced by input-content hashes elsewhere; `out` excluded).
    std::string core_json() const;
};

// Runs filter -> LM -> schema -> vectors -> score -> cluster -> synthetic ->
// samples -> report, writing stage artifacts under cfg.out. Stages whose
// recorded input hash and outputs are unchanged are skipped on rerun.
void run_pipeline(const PipelineConfig& cfg, std::ostream& log);

} // namespace lalita
