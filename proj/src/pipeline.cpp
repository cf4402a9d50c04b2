#include "lalita/pipeline.hpp"

#include <filesystem>
#include <functional>
#include <iostream>
#include <set>

#include <nlohmann/json.hpp>

#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"
#include "lalita/features.hpp"
#include "lalita/hash.hpp"
#include "lalita/io_util.hpp"
#include "lalita/ngram_lm.hpp"
#include "lalita/report.hpp"
#include "lalita/score.hpp"

namespace fs = std::filesystem;

namespace lalita {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw UsageError("unknown config key '" + it.key() + "' in " + where);
}

std::string resolve(const std::string& base_dir, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    if (path.is_absolute()) return path.lexically_normal().string();
    return (fs::path(base_dir) / path).lexically_normal().string();
}

FilterConfig::RomanSide parse_roman_side(const std::string& s) {
    if (s == "source") return FilterConfig::RomanSide::Source;
    if (s == "target") return FilterConfig::RomanSide::Target;
    if (s == "off") return FilterConfig::RomanSide::Off;
    throw UsageError("roman_side must be source, target, or off; got '" + s + "'");
}

std::string roman_side_name(FilterConfig::RomanSide side) {
    switch (side) {
    case FilterConfig::RomanSide::Source: return "source";
    case FilterConfig::RomanSide::Target: return "target";
    default: return "off";
    }
}

} // namespace

PipelineConfig PipelineConfig::from_json_text(const std::string& text, const std::string& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("invalid config JSON: ") + e.what());
    }
    try {
        check_keys(j, {"bitext", "conllu", "sidecar", "synthetic_bitext", "synthetic_conllu",
                       "out", "filter", "lm_order", "pca_k", "cluster_k", "silhouette_seed",
                       "silhouette_subsample", "configurations", "baselines", "report"},
                   "config");
        PipelineConfig cfg;
        cfg.bitext = resolve(base_dir, j.value("bitext", ""));
        cfg.conllu = resolve(base_dir, j.value("conllu", ""));
        cfg.sidecar = resolve(base_dir, j.value("sidecar", ""));
        cfg.synthetic_bitext = resolve(base_dir, j.value("synthetic_bitext", ""));
        cfg.synthetic_conllu = resolve(base_dir, j.value("synthetic_conllu", ""));
        cfg.out = resolve(base_dir, j.value("out", ""));
        if (j.contains("filter")) {
            const auto& f = j.at("filter");
            check_keys(f, {"roman_fraction_max", "roman_side", "length_ratio_max",
                           "enforce_one_to_one", "enforce_single_sentence", "synthetic_loglik_min"},
                       "config.filter");
            cfg.filter.roman_fraction_max = f.value("roman_fraction_max", 0.35);
            if (f.contains("roman_side"))
                cfg.filter.roman_side = parse_roman_side(f.at("roman_side").get<std::string>());
            if (f.contains("length_ratio_max")) {
                if (f.at("length_ratio_max").is_null())
                    cfg.filter.length_ratio_max = std::numeric_limits<double>::infinity();
                else
                    cfg.filter.length_ratio_max = f.at("length_ratio_max").get<double>();
            }
            cfg.filter.enforce_one_to_one = f.value("enforce_one_to_one", true);
            cfg.filter.enforce_single_sentence = f.value("enforce_single_sentence", true);
            cfg.filter.synthetic_loglik_min = f.value("synthetic_loglik_min", -1.0);
        }
        cfg.lm_order = j.value("lm_order", 5);
        cfg.pca_k = j.value("pca_k", 10);
        cfg.cluster_k = j.value("cluster_k", 4);
        cfg.silhouette_seed = j.value("silhouette_seed", std::uint64_t{12345});
        cfg.silhouette_subsample = j.value("silhouette_subsample", std::uint64_t{10000});
        if (j.contains("configurations")) {
            for (const auto& c : j.at("configurations")) {
                check_keys(c, {"percents", "tds", "seed", "allow_augmentation"},
                           "config.configurations[]");
                CurationConfig cc;
                cc.percents = c.at("percents").get<std::vector<double>>();
                cc.tds = c.at("tds").get<std::uint64_t>();
                cc.seed = c.value("seed", std::uint64_t{0});
                cc.allow_augmentation = c.value("allow_augmentation", true);
                cfg.configurations.push_back(std::move(cc));
            }
        }
        if (j.contains("baselines")) {
            const auto& b = j.at("baselines");
            check_keys(b, {"proportional_tds", "random_tds", "random_seed"}, "config.baselines");
            if (b.contains("proportional_tds"))
                cfg.baseline_proportional_tds = b.at("proportional_tds").get<std::uint64_t>();
            if (b.contains("random_tds"))
                cfg.baseline_random_tds = b.at("random_tds").get<std::uint64_t>();
            cfg.baseline_random_seed = b.value("random_seed", std::uint64_t{0});
        }
        if (j.contains("report")) {
            const auto& r = j.at("report");
            check_keys(r, {"enabled", "features", "external_scores"}, "config.report");
            cfg.report_enabled = r.value("enabled", true);
            if (r.contains("features"))
                cfg.report_features = r.at("features").get<std::vector<std::string>>();
            cfg.external_scores = resolve(base_dir, r.value("external_scores", ""));
        }
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("invalid config: ") + e.what());
    }
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    const fs::path p(path);
    const std::string base = p.has_parent_path() ? p.parent_path().string() : ".";
    return from_json_text(read_text_file(path), base);
}

std::string PipelineConfig::core_json() const {
    nlohmann::json j;
    j["filter"] = {{"roman_fraction_max", filter.roman_fraction_max},
                   {"roman_side", roman_side_name(filter.roman_side)},
                   {"length_ratio_max", std::isfinite(filter.length_ratio_max)
                                            ? nlohmann::json(filter.length_ratio_max)
                                            : nlohmann::json(nullptr)},
                   {"enforce_one_to_one", filter.enforce_one_to_one},
                   {"enforce_single_sentence", filter.enforce_single_sentence},
                   {"synthetic_loglik_min", filter.synthetic_loglik_min}};
    j["lm_order"] = lm_order;
    j["pca_k"] = pca_k;
    j["cluster_k"] = cluster_k;
    j["silhouette_seed"] = silhouette_seed;
    j["silhouette_subsample"] = silhouette_subsample;
    nlohmann::json cfgs = nlohmann::json::array();
    for (const auto& c : configurations)
        cfgs.push_back({{"percents", c.percents},
                        {"tds", c.tds},
                        {"seed", c.seed},
                        {"allow_augmentation", c.allow_augmentation}});
    j["configurations"] = cfgs;
    j["baseline_proportional_tds"] = baseline_proportional_tds
                                         ? nlohmann::json(*baseline_proportional_tds)
                                         : nlohmann::json(nullptr);
    j["baseline_random_tds"] = baseline_random_tds ? nlohmann::json(*baseline_random_tds)
                                                   : nlohmann::json(nullptr);
    j["baseline_random_seed"] = baseline_random_seed;
    j["report"] = {{"enabled", report_enabled}, {"features", report_features}};
    j["has_sidecar"] = !sidecar.empty();
    j["has_synthetic"] = !synthetic_bitext.empty();
    j["has_external_scores"] = !external_scores.empty();
    return j.dump();
}

namespace {

// Tracks which stages are current. The meta file stores the global input
// hash plus content hashes of every stage output (relative paths only), so
// reruns under an unchanged config skip completed stages and byte-identical
// artifacts are reproducible in any output directory.
class StageTracker {
public:
    StageTracker(std::string out_dir, std::string global_hash, std::ostream& log)
        : out_dir_(std::move(out_dir)), global_hash_(std::move(global_hash)), log_(log) {
        const std::string meta_path = path("pipeline_meta.json");
        if (fs::exists(meta_path)) {
            try {
                auto j = nlohmann::json::parse(read_text_file(meta_path));
                if (j.value("global_hash", "") == global_hash_) stages_ = j.value("stages", nlohmann::json::object());
            } catch (...) {
                // unreadable meta: treat as a cold start
            }
        }
    }

    std::string path(const std::string& rel) const {
        return (fs::path(out_dir_) / rel).string();
    }

    void run(const std::string& name, const std::vector<std::string>& outputs,
             const std::function<void()>& produce) {
        if (up_to_date(name, outputs)) {
            log_ << "stage " << name << ": up to date\n";
            return;
        }
        log_ << "stage " << name << ": running\n";
        try {
            produce();
        } catch (const UsageError& e) {
            throw UsageError("stage '" + name + "' failed: " + e.what());
        } catch (const DataError& e) {
            throw DataError("stage '" + name + "' failed: " + e.what());
        } catch (const std::exception& e) {
            throw InternalError("stage '" + name + "' failed: " + e.what());
        }
        nlohmann::json outs = nlohmann::json::object();
        for (const auto& rel : outputs) outs[rel] = hash_hex(read_text_file(path(rel)));
        stages_[name] = {{"outputs", outs}};
        write_meta();
    }

private:
    bool up_to_date(const std::string& name, const std::vector<std::string>& outputs) const {
        if (!stages_.contains(name)) return false;
        const auto& outs = stages_.at(name).value("outputs", nlohmann::json::object());
        for (const auto& rel : outputs) {
            if (!outs.contains(rel)) return false;
            const std::string p = path(rel);
            if (!fs::exists(p)) return false;
            if (outs.at(rel).get<std::string>() != hash_hex(read_text_file(p))) return false;
        }
        return true;
    }

    void write_meta() const {
        nlohmann::json j;
        j["format"] = "lalita-pipeline-meta";
        j["version"] = 1;
        j["global_hash"] = global_hash_;
        j["stages"] = stages_;
        write_text_file_atomic(path("pipeline_meta.json"), j.dump(2));
    }

    std::string out_dir_;
    std::string global_hash_;
    std::ostream& log_;
    nlohmann::json stages_ = nlohmann::json::object();
};

std::vector<AnnotatedSentence> annotations_for(const std::vector<BitextPair>& pairs,
                                               const std::vector<AnnotatedSentence>& anns,
                                               const char* purpose) {
    auto join = join_bitext(pairs, anns);
    if (!join.unmatched_pair_ids.empty())
        throw DataError(std::string("pair '") + join.unmatched_pair_ids.front() +
                        "' has no annotation; cannot " + purpose);
    std::vector<AnnotatedSentence> out;
    out.reserve(join.joined.size());
    for (auto& [p, a] : join.joined) out.push_back(std::move(a));
    return out;
}

bool corpus_has_nlm(const std::vector<BitextPair>& pairs) {
    std::size_t with = 0;
    const std::string* missing = nullptr;
    for (const auto& p : pairs) {
        if (p.sidecar.count("nlm_ppl"))
            ++with;
        else if (!missing)
            missing = &p.id;
    }
    if (with == 0) return false;
    if (with != pairs.size())
        throw DataError("pair '" + *missing +
                        "' lacks the nlm_ppl sidecar carried by other pairs; supply it for all "
                        "pairs or none");
    return true;
}

std::vector<double> scores_of(const std::vector<ScoredSentence>& scored) {
    std::vector<double> out;
    out.reserve(scored.size());
    for (const auto& s : scored) out.push_back(s.lalita);
    return out;
}

} // namespace

void run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
    if (cfg.bitext.empty() || cfg.conllu.empty() || cfg.out.empty())
        throw UsageError("config must set bitext, conllu, and out");
    if (cfg.synthetic_bitext.empty() != cfg.synthetic_conllu.empty())
        throw UsageError("synthetic_bitext and synthetic_conllu must be set together");
    if (cfg.lm_order < 1) throw UsageError("lm_order must be >= 1");
    if (cfg.pca_k < 1) throw UsageError("pca_k must be >= 1");
    if (cfg.cluster_k < 1) throw UsageError("cluster_k must be >= 1");
    cfg.filter.validate();
    for (const auto& c : cfg.configurations) c.validate(cfg.cluster_k);

    std::vector<std::pair<std::string, std::string>> inputs = {{"bitext", cfg.bitext},
                                                               {"conllu", cfg.conllu}};
    if (!cfg.sidecar.empty()) inputs.emplace_back("sidecar", cfg.sidecar);
    if (!cfg.synthetic_bitext.empty()) {
        inputs.emplace_back("synthetic_bitext", cfg.synthetic_bitext);
        inputs.emplace_back("synthetic_conllu", cfg.synthetic_conllu);
    }
    if (!cfg.external_scores.empty()) inputs.emplace_back("external_scores", cfg.external_scores);
    for (const auto& [field, p] : inputs)
        if (!fs::exists(p))
            throw DataError("config references a missing file: " + p + " (" + field + ")");

    std::string hash_input = cfg.core_json();
    for (const auto& [field, p] : inputs) {
        hash_input += '\0' + field + '\0';
        hash_input += read_text_file(p);
    }
    StageTracker tracker(cfg.out, hash_hex(hash_input), log);

    const bool has_synth = !cfg.synthetic_bitext.empty();

    tracker.run("filter", {"filtered.tsv", "filter_report.json"}, [&] {
        auto pairs = read_bitext_file(cfg.bitext);
        if (!cfg.sidecar.empty()) merge_sidecar_file(pairs, cfg.sidecar);
        auto anns = parse_conllu_file(cfg.conllu);
        auto res = filter_pipeline(pairs, anns, cfg.filter);
        write_bitext_file(tracker.path("filtered.tsv"), res.pairs);
        write_text_file_atomic(tracker.path("filter_report.json"), res.report.to_json());
    });

    tracker.run("lm", {"lm.json"}, [&] {
        auto pairs = read_bitext_file(tracker.path("filtered.tsv"));
        auto anns = annotations_for(pairs, parse_conllu_file(cfg.conllu), "train the LM");
        std::vector<std::vector<std::string>> corpus;
        corpus.reserve(anns.size());
        for (const auto& a : anns) corpus.push_back(normalize_for_lm(a));
        train_kn(corpus, cfg.lm_order).save(tracker.path("lm.json"));
    });

    tracker.run("schema", {"schema.json"}, [&] {
        auto pairs = read_bitext_file(tracker.path("filtered.tsv"));
        auto anns = annotations_for(pairs, parse_conllu_file(cfg.conllu), "build the schema");
        build_schema(anns, corpus_has_nlm(pairs)).save(tracker.path("schema.json"));
    });

    auto vectorize_file = [&](const std::string& pairs_path, const std::string& out_rel) {
        auto pairs = read_bitext_file(pairs_path);
        const std::string conllu_path =
            pairs_path == tracker.path("filtered.tsv") ? cfg.conllu : cfg.synthetic_conllu;
        auto anns = annotations_for(pairs, parse_conllu_file(conllu_path), "vectorize");
        auto schema = FeatureSchema::load(tracker.path("schema.json"));
        auto lm = NgramModel::load(tracker.path("lm.json"));
        VectorizeStats stats;
        std::vector<FeatureVector> vectors;
        vectors.reserve(pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const double slm = lm.perplexity(normalize_for_lm(anns[i]));
            std::optional<double> nlm;
            if (schema.has_nlm()) {
                nlm = pairs[i].sidecar_value("nlm_ppl");
                if (!nlm)
                    throw DataError("pair '" + pairs[i].id +
                                    "' lacks the nlm_ppl sidecar required by the schema");
            }
            vectors.push_back(vectorize(anns[i], schema, slm, nlm, &stats));
        }
        if (stats.unseen_deprel + stats.unseen_umf > 0)
            log << "warning: skipped " << stats.unseen_deprel << " dependency label(s) and "
                << stats.unseen_umf << " morphology value(s) absent from the schema\n";
        write_vectors_tsv(tracker.path(out_rel), vectors);
    };

    tracker.run("vectors", {"vectors.tsv"},
                [&] { vectorize_file(tracker.path("filtered.tsv"), "vectors.tsv"); });

    tracker.run("score", {"score_model.json", "scores.tsv", "loadings.tsv"}, [&] {
        auto schema = FeatureSchema::load(tracker.path("schema.json"));
        auto vectors = read_vectors_tsv(tracker.path("vectors.tsv"), schema.dimension());
        auto model = fit_score_model(vectors, schema, cfg.pca_k);
        model.save(tracker.path("score_model.json"));
        std::vector<ScoredSentence> scored;
        scored.reserve(vectors.size());
        for (const auto& v : vectors) scored.push_back(score(model, v));
        write_scores_tsv(tracker.path("scores.tsv"), scored);
        std::string loadings = "feature\tmagnitude\n";
        for (const auto& [name, mag] : export_loadings(model))
            loadings += name + "\t" + format_double(mag) + "\n";
        write_text_file_atomic(tracker.path("loadings.tsv"), loadings);
    });

    tracker.run("cluster", {"cluster.json", "labels.tsv"}, [&] {
        auto scored = read_scores_tsv(tracker.path("scores.tsv"));
        auto model = fit_cluster_model(scores_of(scored), cfg.cluster_k, cfg.silhouette_subsample,
                                       cfg.silhouette_seed);
        model.save(tracker.path("cluster.json"));
        std::string labels;
        for (const auto& s : scored)
            labels += s.id + "\t" + std::to_string(assign_cluster(model, s.lalita)) + "\n";
        write_text_file_atomic(tracker.path("labels.tsv"), labels);
    });

    if (has_synth) {
        tracker.run("synthetic",
                    {"synthetic_filtered.tsv", "synthetic_filter_report.json",
                     "synthetic_vectors.tsv", "synthetic_scores.tsv"},
                    [&] {
                        auto pairs = read_bitext_file(cfg.synthetic_bitext);
                        auto anns = parse_conllu_file(cfg.synthetic_conllu);
                        auto res = synthetic_quality_filter(pairs, anns,
                                                            cfg.filter.synthetic_loglik_min);
                        write_bitext_file(tracker.path("synthetic_filtered.tsv"), res.pairs);
                        write_text_file_atomic(tracker.path("synthetic_filter_report.json"),
                                               res.report.to_json());
                        vectorize_file(tracker.path("synthetic_filtered.tsv"),
                                       "synthetic_vectors.tsv");
                        auto schema = FeatureSchema::load(tracker.path("schema.json"));
                        auto vectors = read_vectors_tsv(tracker.path("synthetic_vectors.tsv"),
                                                        schema.dimension());
                        auto model = ScoreModel::load(tracker.path("score_model.json"));
                        std::vector<ScoredSentence> scored;
                        scored.reserve(vectors.size());
                        for (const auto& v : vectors) scored.push_back(score(model, v));
                        write_scores_tsv(tracker.path("synthetic_scores.tsv"), scored);
                    });
    }

    if (!cfg.configurations.empty() || cfg.baseline_proportional_tds || cfg.baseline_random_tds) {
        std::vector<std::string> outputs;
        for (const auto& c : cfg.configurations) {
            const std::string dir = "samples/" + c.label() + "_tds" + std::to_string(c.tds);
            outputs.push_back(dir + "/corpus.tsv");
            outputs.push_back(dir + "/manifest.json");
        }
        if (cfg.baseline_proportional_tds) {
            outputs.push_back("samples/baselineP_tds" +
                              std::to_string(*cfg.baseline_proportional_tds) + "/corpus.tsv");
            outputs.push_back("samples/baselineP_tds" +
                              std::to_string(*cfg.baseline_proportional_tds) + "/manifest.json");
        }
        if (cfg.baseline_random_tds) {
            outputs.push_back("samples/baselineR_tds" + std::to_string(*cfg.baseline_random_tds) +
                              "/corpus.tsv");
            outputs.push_back("samples/baselineR_tds" + std::to_string(*cfg.baseline_random_tds) +
                              "/manifest.json");
        }
        tracker.run("samples", outputs, [&] {
            auto pairs = read_bitext_file(tracker.path("filtered.tsv"));
            auto scored = read_scores_tsv(tracker.path("scores.tsv"));
            auto model = ClusterModel::load(tracker.path("cluster.json"));
            auto corpus = ClusteredCorpus::build(pairs, scores_of(scored), model, false);
            std::optional<ClusteredCorpus> synth;
            if (has_synth) {
                auto spairs = read_bitext_file(tracker.path("synthetic_filtered.tsv"));
                auto sscored = read_scores_tsv(tracker.path("synthetic_scores.tsv"));
                synth = ClusteredCorpus::build(spairs, scores_of(sscored), model, true);
            }
            for (const auto& c : cfg.configurations) {
                const std::string dir = "samples/" + c.label() + "_tds" + std::to_string(c.tds);
                auto res = sample_configuration(corpus, synth, c);
                write_bitext_file(tracker.path(dir + "/corpus.tsv"), res.pairs);
                write_text_file_atomic(tracker.path(dir + "/manifest.json"),
                                       res.manifest.to_json());
            }
            if (cfg.baseline_proportional_tds) {
                const std::string dir =
                    "samples/baselineP_tds" + std::to_string(*cfg.baseline_proportional_tds);
                auto res = baseline_proportional(corpus, model, *cfg.baseline_proportional_tds);
                write_bitext_file(tracker.path(dir + "/corpus.tsv"), res.pairs);
                write_text_file_atomic(tracker.path(dir + "/manifest.json"),
                                       res.manifest.to_json());
            }
            if (cfg.baseline_random_tds) {
                const std::string dir =
                    "samples/baselineR_tds" + std::to_string(*cfg.baseline_random_tds);
                auto sample =
                    random_sample(pairs, *cfg.baseline_random_tds, cfg.baseline_random_seed);
                write_bitext_file(tracker.path(dir + "/corpus.tsv"), sample);
                const TokenBudget tb = token_budget(sample);
                nlohmann::json mj;
                mj["baseline"] = "random";
                mj["tds"] = *cfg.baseline_random_tds;
                mj["seed"] = cfg.baseline_random_seed;
                mj["tokens"] = {{"source", tb.source}, {"target", tb.target}};
                write_text_file_atomic(tracker.path(dir + "/manifest.json"), mj.dump(2));
            }
        });
    }

    if (cfg.report_enabled) {
        tracker.run("report", {"report.json", "histograms.tsv"}, [&] {
            auto pairs = read_bitext_file(tracker.path("filtered.tsv"));
            auto scored = read_scores_tsv(tracker.path("scores.tsv"));
            auto schema = FeatureSchema::load(tracker.path("schema.json"));
            auto vectors = read_vectors_tsv(tracker.path("vectors.tsv"), schema.dimension());
            auto model = ClusterModel::load(tracker.path("cluster.json"));
            std::optional<std::vector<double>> external;
            if (!cfg.external_scores.empty())
                external = scores_of(read_scores_tsv(cfg.external_scores));
            auto report = report_clusters(pairs, scores_of(scored), model, vectors, schema,
                                          cfg.report_features, external);
            write_text_file_atomic(tracker.path("report.json"), report.json);
            write_text_file_atomic(tracker.path("histograms.tsv"), report.histograms_tsv);
        });
    }

    log << "pipeline complete: " << cfg.out << "\n";
}

} // namespace lalita
