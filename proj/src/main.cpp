#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lalita/bitext.hpp"
#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"
#include "lalita/features.hpp"
#include "lalita/filter.hpp"
#include "lalita/io_util.hpp"
#include "lalita/jenks.hpp"
#include "lalita/ngram_lm.hpp"
#include "lalita/pipeline.hpp"
#include "lalita/report.hpp"
#include "lalita/sampler.hpp"
#include "lalita/score.hpp"

namespace {

using namespace lalita;

std::vector<double> parse_percent_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string cur;
    std::istringstream ss(text);
    const char sep = text.find('_') != std::string::npos && text.find(',') == std::string::npos
                         ? '_'
                         : ',';
    while (std::getline(ss, cur, sep)) {
        try {
            out.push_back(parse_double(cur, what));
        } catch (const DataError& e) {
            throw UsageError(e.what());
        }
    }
    if (out.empty()) throw UsageError(std::string(what) + " must list at least one value");
    return out;
}

std::vector<BitextPair> load_pairs(const std::string& bitext, const std::string& sidecar) {
    auto pairs = read_bitext_file(bitext);
    if (!sidecar.empty()) merge_sidecar_file(pairs, sidecar);
    return pairs;
}

// Annotations aligned 1:1 with `pairs`; every pair must have one.
std::vector<AnnotatedSentence> aligned_annotations(const std::vector<BitextPair>& pairs,
                                                   const std::string& conllu_path) {
    auto join = join_bitext(pairs, parse_conllu_file(conllu_path));
    if (!join.unmatched_pair_ids.empty())
        throw DataError("pair '" + join.unmatched_pair_ids.front() + "' has no annotation in " +
                        conllu_path);
    std::vector<AnnotatedSentence> out;
    out.reserve(join.joined.size());
    for (auto& [p, a] : join.joined) out.push_back(std::move(a));
    return out;
}

bool detect_nlm(const std::vector<BitextPair>& pairs) {
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
        throw DataError("pair '" + *missing + "' lacks the nlm_ppl sidecar carried by other pairs");
    return true;
}

std::vector<FeatureVector> compute_vectors(const std::vector<BitextPair>& pairs,
                                           const std::vector<AnnotatedSentence>& anns,
                                           const FeatureSchema& schema, const NgramModel& lm) {
    VectorizeStats stats;
    std::vector<FeatureVector> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double slm = lm.perplexity(normalize_for_lm(anns[i]));
        std::optional<double> nlm;
        if (schema.has_nlm()) {
            nlm = pairs[i].sidecar_value("nlm_ppl");
            if (!nlm)
                throw DataError("pair '" + pairs[i].id +
                                "' lacks the nlm_ppl sidecar required by the schema");
        }
        out.push_back(vectorize(anns[i], schema, slm, nlm, &stats));
    }
    if (stats.unseen_deprel + stats.unseen_umf > 0)
        std::cerr << "warning: skipped " << stats.unseen_deprel << " dependency label(s) and "
                  << stats.unseen_umf << " morphology value(s) absent from the schema\n";
    return out;
}

std::vector<double> plain_scores(const std::vector<ScoredSentence>& scored) {
    std::vector<double> out;
    out.reserve(scored.size());
    for (const auto& s : scored) out.push_back(s.lalita);
    return out;
}

std::vector<ScoredPair> scored_pairs(const std::vector<BitextPair>& pairs,
                                     const std::vector<ScoredSentence>& scored) {
    if (pairs.size() != scored.size())
        throw DataError("bitext and score files disagree on row count");
    std::vector<ScoredPair> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].id != scored[i].id)
            throw DataError("bitext and score files disagree at row " + std::to_string(i + 1) +
                            ": '" + pairs[i].id + "' vs '" + scored[i].id + "'");
        out.push_back({pairs[i], scored[i].lalita});
    }
    return out;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"LALITA corpus curation: filter bitext, score sentence complexity, "
                 "cluster, and sample curated training corpora"};
    app.require_subcommand(1);

    // ---- filter ----
    struct {
        std::string bitext, conllu, sidecar, out, report;
        FilterConfig cfg;
        std::string roman_side = "target";
        double length_ratio_max = 4.0;
        bool no_length = false, no_one_to_one = false, no_single_sentence = false;
        bool synthetic = false;
    } f;
    auto* filter_cmd = app.add_subcommand("filter", "Apply the bitext hygiene rules");
    filter_cmd->add_option("--bitext", f.bitext, "Input bitext TSV")->required();
    filter_cmd->add_option("--conllu", f.conllu, "Source-side CoNLL-U annotations")->required();
    filter_cmd->add_option("--sidecar", f.sidecar, "Extra key=value sidecar TSV merged by id");
    filter_cmd->add_option("--out", f.out, "Surviving pairs (bitext TSV)")->required();
    filter_cmd->add_option("--report", f.report, "Removal-count report (JSON)");
    filter_cmd->add_option("--roman-fraction-max", f.cfg.roman_fraction_max,
                           "Max fraction of romanized tokens (default 0.35)");
    filter_cmd->add_option("--roman-side", f.roman_side,
                           "Side checked for romanization: source|target|off (default target)");
    filter_cmd->add_option("--length-ratio-max", f.length_ratio_max,
                           "Max token-count ratio between sides (default 4.0)");
    filter_cmd->add_flag("--no-length-ratio", f.no_length, "Disable the length-ratio rule");
    filter_cmd->add_flag("--no-one-to-one", f.no_one_to_one, "Disable the one-to-one rule");
    filter_cmd->add_flag("--no-single-sentence", f.no_single_sentence,
                         "Disable the single-sentence rule");
    filter_cmd->add_flag("--synthetic", f.synthetic,
                         "Treat input as synthetic back-translated data: apply the avg_logprob "
                         "quality threshold and single-sentence rule only");
    filter_cmd->add_option("--synthetic-loglik-min", f.cfg.synthetic_loglik_min,
                           "Min avg_logprob for synthetic pairs (default -1.0)");
    filter_cmd->callback([&] {
        f.cfg.length_ratio_max =
            f.no_length ? std::numeric_limits<double>::infinity() : f.length_ratio_max;
        f.cfg.enforce_one_to_one = !f.no_one_to_one;
        f.cfg.enforce_single_sentence = !f.no_single_sentence;
        if (f.roman_side == "source")
            f.cfg.roman_side = FilterConfig::RomanSide::Source;
        else if (f.roman_side == "target")
            f.cfg.roman_side = FilterConfig::RomanSide::Target;
        else if (f.roman_side == "off")
            f.cfg.roman_side = FilterConfig::RomanSide::Off;
        else
            throw UsageError("--roman-side must be source, target, or off");
        f.cfg.validate();
        auto pairs = load_pairs(f.bitext, f.sidecar);
        auto anns = parse_conllu_file(f.conllu);
        auto res = f.synthetic ? synthetic_quality_filter(pairs, anns, f.cfg.synthetic_loglik_min)
                               : filter_pipeline(pairs, anns, f.cfg);
        write_bitext_file(f.out, res.pairs);
        if (!f.report.empty()) write_text_file_atomic(f.report, res.report.to_json());
        std::cerr << "kept " << res.report.survivors << " of " << res.report.input << " pairs\n";
    });

    // ---- lm-train ----
    struct {
        std::string conllu, bitext, out;
        int order = 5;
    } lt;
    auto* lm_train_cmd = app.add_subcommand("lm-train", "Train the Kneser-Ney n-gram model");
    lm_train_cmd->add_option("--conllu", lt.conllu, "Training sentences (CoNLL-U)")->required();
    lm_train_cmd->add_option("--bitext", lt.bitext,
                             "Restrict training to annotations joined to this bitext");
    lm_train_cmd->add_option("--order", lt.order, "Model order (default 5)");
    lm_train_cmd->add_option("--out", lt.out, "Model file (JSON)")->required();
    lm_train_cmd->callback([&] {
        std::vector<AnnotatedSentence> anns;
        if (lt.bitext.empty())
            anns = parse_conllu_file(lt.conllu);
        else
            anns = aligned_annotations(read_bitext_file(lt.bitext), lt.conllu);
        std::vector<std::vector<std::string>> corpus;
        corpus.reserve(anns.size());
        for (const auto& a : anns) corpus.push_back(normalize_for_lm(a));
        auto model = train_kn(corpus, lt.order);
        model.save(lt.out);
        std::cerr << "trained order-" << model.order() << " model on " << model.train_sentences()
                  << " sentence(s), vocabulary " << model.predict_vocab_size() << "\n";
    });

    // ---- lm-ppl ----
    struct {
        std::string model, conllu, text, out;
    } lp;
    auto* lm_ppl_cmd = app.add_subcommand("lm-ppl", "Per-sentence perplexity under a trained model");
    lm_ppl_cmd->add_option("--model", lp.model, "Model file from lm-train")->required();
    lm_ppl_cmd->add_option("--conllu", lp.conllu, "Score CoNLL-U sentences (id<TAB>ppl rows)");
    lm_ppl_cmd->add_option("--text", lp.text,
                           "Score whitespace-tokenized text lines ('-' = stdin; ppl per line)");
    lm_ppl_cmd->add_option("--out", lp.out, "Output file (default stdout)");
    lm_ppl_cmd->callback([&] {
        if (lp.conllu.empty() == lp.text.empty())
            throw UsageError("lm-ppl needs exactly one of --conllu or --text");
        auto model = NgramModel::load(lp.model);
        std::string buf;
        if (!lp.conllu.empty()) {
            for (const auto& ann : parse_conllu_file(lp.conllu))
                buf += ann.id + "\t" + format_double(model.perplexity(normalize_for_lm(ann))) +
                       "\n";
        } else {
            std::string content;
            if (lp.text == "-") {
                std::ostringstream ss;
                ss << std::cin.rdbuf();
                content = ss.str();
            } else {
                content = read_text_file(lp.text);
            }
            for (const auto& line : split_lines(content))
                buf += format_double(model.perplexity(normalize_text_for_lm(line))) + "\n";
        }
        if (lp.out.empty())
            std::cout << buf;
        else
            write_text_file_atomic(lp.out, buf);
    });

    // ---- schema ----
    struct {
        std::string bitext, conllu, sidecar, out;
        bool no_nlm = false;
    } sc;
    auto* schema_cmd = app.add_subcommand("schema", "Derive the feature schema from a corpus");
    schema_cmd->add_option("--bitext", sc.bitext, "Corpus bitext TSV")->required();
    schema_cmd->add_option("--conllu", sc.conllu, "Source-side annotations")->required();
    schema_cmd->add_option("--sidecar", sc.sidecar, "Sidecar TSV merged by id");
    schema_cmd->add_option("--out", sc.out, "Schema file (JSON)")->required();
    schema_cmd->add_flag("--no-nlm", sc.no_nlm,
                         "Omit the neural-LM perplexity feature even if sidecars carry it");
    schema_cmd->callback([&] {
        auto pairs = load_pairs(sc.bitext, sc.sidecar);
        auto anns = aligned_annotations(pairs, sc.conllu);
        const bool has_nlm = !sc.no_nlm && detect_nlm(pairs);
        auto schema = build_schema(anns, has_nlm);
        schema.save(sc.out);
        std::cerr << "schema with " << schema.dimension() << " feature(s)"
                  << (has_nlm ? " (incl. nlm_ppl)" : "") << "\n";
    });

    // ---- vectorize ----
    struct {
        std::string bitext, conllu, sidecar, schema, lm, out, binary;
    } vz;
    auto* vec_cmd = app.add_subcommand("vectorize", "Compute per-sentence feature vectors");
    vec_cmd->add_option("--bitext", vz.bitext, "Corpus bitext TSV")->required();
    vec_cmd->add_option("--conllu", vz.conllu, "Source-side annotations")->required();
    vec_cmd->add_option("--sidecar", vz.sidecar, "Sidecar TSV merged by id");
    vec_cmd->add_option("--schema", vz.schema, "Schema file from `schema`")->required();
    vec_cmd->add_option("--lm", vz.lm, "Model file from lm-train")->required();
    vec_cmd->add_option("--out", vz.out, "Vectors TSV")->required();
    vec_cmd->add_option("--binary", vz.binary, "Also write the columnar binary cache");
    vec_cmd->callback([&] {
        auto pairs = load_pairs(vz.bitext, vz.sidecar);
        auto anns = aligned_annotations(pairs, vz.conllu);
        auto schema = FeatureSchema::load(vz.schema);
        auto lm = NgramModel::load(vz.lm);
        auto vectors = compute_vectors(pairs, anns, schema, lm);
        write_vectors_tsv(vz.out, vectors);
        if (!vz.binary.empty()) write_vectors_binary(vz.binary, vectors, schema.dimension());
    });

    // ---- score-fit ----
    struct {
        std::string vectors, schema, out, scores, loadings;
        int k = 10;
    } sf;
    auto* fit_cmd = app.add_subcommand("score-fit", "Fit the PCA complexity-score model");
    fit_cmd->add_option("--vectors", sf.vectors, "Vectors TSV from vectorize")->required();
    fit_cmd->add_option("--schema", sf.schema, "Schema file")->required();
    fit_cmd->add_option("-k,--components", sf.k, "Components to keep (default 10)");
    fit_cmd->add_option("--out", sf.out, "Score model file (JSON)")->required();
    fit_cmd->add_option("--scores", sf.scores, "Also score the fit corpus (TSV)");
    fit_cmd->add_option("--loadings", sf.loadings, "First-component loading magnitudes (TSV)");
    fit_cmd->callback([&] {
        auto schema = FeatureSchema::load(sf.schema);
        auto vectors = read_vectors_tsv(sf.vectors, schema.dimension());
        auto model = fit_score_model(vectors, schema, sf.k);
        model.save(sf.out);
        if (!sf.scores.empty()) {
            std::vector<ScoredSentence> scored;
            scored.reserve(vectors.size());
            for (const auto& v : vectors) scored.push_back(score(model, v));
            write_scores_tsv(sf.scores, scored);
        }
        if (!sf.loadings.empty()) {
            std::string buf = "feature\tmagnitude\n";
            for (const auto& [name, mag] : export_loadings(model))
                buf += name + "\t" + format_double(mag) + "\n";
            write_text_file_atomic(sf.loadings, buf);
        }
    });

    // ---- score ----
    struct {
        std::string vectors, schema, model, out;
    } so;
    auto* score_cmd = app.add_subcommand("score", "Score vectors with a fitted model");
    score_cmd->add_option("--vectors", so.vectors, "Vectors TSV")->required();
    score_cmd->add_option("--schema", so.schema, "Schema file")->required();
    score_cmd->add_option("--model", so.model, "Score model from score-fit")->required();
    score_cmd->add_option("--out", so.out, "Scores TSV")->required();
    score_cmd->callback([&] {
        auto schema = FeatureSchema::load(so.schema);
        auto model = ScoreModel::load(so.model);
        if (model.schema_hash != schema.hash())
            throw DataError("score model was fitted under a different schema");
        auto vectors = read_vectors_tsv(so.vectors, schema.dimension());
        std::vector<ScoredSentence> scored;
        scored.reserve(vectors.size());
        for (const auto& v : vectors) scored.push_back(score(model, v));
        write_scores_tsv(so.out, scored);
    });

    // ---- cluster ----
    struct {
        std::string scores, out, labels;
        int k = 4;
        std::uint64_t subsample = 10000, seed = 12345;
    } cl;
    auto* cluster_cmd = app.add_subcommand("cluster", "Fisher-Jenks clustering of scores");
    cluster_cmd->add_option("--scores", cl.scores, "Scores TSV")->required();
    cluster_cmd->add_option("-k,--clusters", cl.k, "Number of clusters (default 4)");
    cluster_cmd->add_option("--out", cl.out, "Cluster model file (JSON)")->required();
    cluster_cmd->add_option("--labels", cl.labels, "Per-sentence assignments (id<TAB>cluster)");
    cluster_cmd->add_option("--silhouette-subsample", cl.subsample,
                            "Points above which silhouette is subsampled (default 10000)");
    cluster_cmd->add_option("--silhouette-seed", cl.seed, "Subsample seed (default 12345)");
    cluster_cmd->callback([&] {
        auto scored = read_scores_tsv(cl.scores);
        auto model = fit_cluster_model(plain_scores(scored), cl.k, cl.subsample, cl.seed);
        model.save(cl.out);
        if (!cl.labels.empty()) {
            std::string buf;
            for (const auto& s : scored)
                buf += s.id + "\t" + std::to_string(assign_cluster(model, s.lalita)) + "\n";
            write_text_file_atomic(cl.labels, buf);
        }
        std::cerr << "silhouette " << format_double(model.silhouette) << "\n";
    });

    // ---- sample ----
    struct {
        std::string bitext, scores, cluster, config, baseline, synthetic, synthetic_scores;
        std::string out, manifest;
        std::uint64_t tds = 0, seed = 0;
        bool no_augment = false;
    } sp;
    auto* sample_cmd = app.add_subcommand("sample", "Draw one curated corpus");
    sample_cmd->add_option("--bitext", sp.bitext, "Filtered bitext TSV")->required();
    sample_cmd->add_option("--scores", sp.scores, "Scores TSV aligned with --bitext")->required();
    sample_cmd->add_option("--cluster", sp.cluster, "Cluster model file")->required();
    sample_cmd->add_option("--config", sp.config,
                           "Cluster percents as a_b_c_d (e.g. 70_10_10_10)");
    sample_cmd->add_option("--baseline", sp.baseline, "proportional or random");
    sample_cmd->add_option("--tds", sp.tds, "Total dataset size in pairs")->required();
    sample_cmd->add_option("--synthetic", sp.synthetic,
                           "Synthetic bitext TSV used to fill cluster deficits");
    sample_cmd->add_option("--synthetic-scores", sp.synthetic_scores,
                           "Scores TSV aligned with --synthetic");
    sample_cmd->add_option("--seed", sp.seed, "Seed for the random baseline");
    sample_cmd->add_flag("--no-augment", sp.no_augment, "Fail on deficit instead of filling");
    sample_cmd->add_option("--out", sp.out, "Sampled corpus (bitext TSV)")->required();
    sample_cmd->add_option("--manifest", sp.manifest, "Sample manifest (JSON)");
    sample_cmd->callback([&] {
        if (sp.config.empty() == sp.baseline.empty())
            throw UsageError("sample needs exactly one of --config or --baseline");
        if (sp.synthetic.empty() != sp.synthetic_scores.empty())
            throw UsageError("--synthetic and --synthetic-scores must be given together");
        auto pairs = read_bitext_file(sp.bitext);
        auto model = ClusterModel::load(sp.cluster);
        if (!sp.baseline.empty() && sp.baseline == "random") {
            auto sample = random_sample(pairs, sp.tds, sp.seed);
            write_bitext_file(sp.out, sample);
            if (!sp.manifest.empty()) {
                const TokenBudget tb = token_budget(sample);
                write_text_file_atomic(
                    sp.manifest, std::string("{\n  \"baseline\": \"random\",\n  \"seed\": ") +
                                     std::to_string(sp.seed) + ",\n  \"tds\": " +
                                     std::to_string(sp.tds) + ",\n  \"tokens\": {\"source\": " +
                                     std::to_string(tb.source) + ", \"target\": " +
                                     std::to_string(tb.target) + "}\n}\n");
            }
            return;
        }
        auto scored = read_scores_tsv(sp.scores);
        auto corpus = ClusteredCorpus::build(pairs, plain_scores(scored), model, false);
        SampleResult res;
        if (!sp.baseline.empty()) {
            if (sp.baseline != "proportional")
                throw UsageError("--baseline must be proportional or random");
            res = baseline_proportional(corpus, model, sp.tds);
        } else {
            std::optional<ClusteredCorpus> synth;
            if (!sp.synthetic.empty()) {
                auto spairs = read_bitext_file(sp.synthetic);
                auto sscored = read_scores_tsv(sp.synthetic_scores);
                synth = ClusteredCorpus::build(spairs, plain_scores(sscored), model, true);
            }
            CurationConfig cc;
            cc.percents = parse_percent_list(sp.config, "--config");
            cc.tds = sp.tds;
            cc.seed = sp.seed;
            cc.allow_augmentation = !sp.no_augment;
            cc.validate(model.k);
            res = sample_configuration(corpus, synth, cc);
        }
        write_bitext_file(sp.out, res.pairs);
        if (!sp.manifest.empty()) write_text_file_atomic(sp.manifest, res.manifest.to_json());
    });

    // ---- order ----
    struct {
        std::string bitext, scores, strategy, out, cuts;
        std::uint64_t increment = 0, seed = 0;
    } od;
    auto* order_cmd = app.add_subcommand("order", "Stepwise corpus ordering with cut points");
    order_cmd->add_option("--bitext", od.bitext, "Corpus bitext TSV")->required();
    order_cmd->add_option("--scores", od.scores, "Scores TSV aligned with --bitext")->required();
    order_cmd->add_option("--strategy", od.strategy, "incpca, decpca, or rs")->required();
    order_cmd->add_option("--increment", od.increment, "Pairs per step")->required();
    order_cmd->add_option("--seed", od.seed, "Seed for the rs strategy");
    order_cmd->add_option("--out", od.out, "Ordered corpus (bitext TSV)")->required();
    order_cmd->add_option("--cuts", od.cuts, "Cut points, one prefix size per line");
    order_cmd->callback([&] {
        auto pairs = read_bitext_file(od.bitext);
        auto scored = read_scores_tsv(od.scores);
        auto res = stepwise_order(scored_pairs(pairs, scored), parse_order_strategy(od.strategy),
                                  od.increment, od.seed);
        std::vector<BitextPair> ordered;
        ordered.reserve(res.pairs.size());
        for (auto& p : res.pairs) ordered.push_back(std::move(p.pair));
        write_bitext_file(od.out, ordered);
        std::string buf;
        for (auto c : res.cut_points) buf += std::to_string(c) + "\n";
        if (od.cuts.empty())
            std::cout << buf;
        else
            write_text_file_atomic(od.cuts, buf);
    });

    // ---- enum-configs ----
    struct {
        std::string set;
    } ec;
    auto* enum_cmd = app.add_subcommand("enum-configs",
                                        "Distinct orderings of a cluster-percent multiset");
    enum_cmd->add_option("--set", ec.set, "Comma-separated percents, e.g. 70,10,10,10")
        ->required();
    enum_cmd->callback([&] {
        auto percents = parse_percent_list(ec.set, "--set");
        CurationConfig probe;
        probe.percents = percents;
        probe.tds = 1;
        probe.validate(static_cast<int>(percents.size()));
        for (const auto& cfg : enumerate_configurations(percents)) {
            CurationConfig c;
            c.percents = cfg;
            std::cout << c.label() << "\n";
        }
    });

    // ---- report ----
    struct {
        std::string bitext, scores, cluster, vectors, schema, external, out, histograms;
        std::vector<std::string> features{"VERB", "sentenceLength"};
    } rp;
    auto* report_cmd = app.add_subcommand("report", "Cluster composition report");
    report_cmd->add_option("--bitext", rp.bitext, "Corpus bitext TSV")->required();
    report_cmd->add_option("--scores", rp.scores, "Scores TSV aligned with --bitext")->required();
    report_cmd->add_option("--cluster", rp.cluster, "Cluster model file")->required();
    report_cmd->add_option("--vectors", rp.vectors, "Vectors TSV aligned with --bitext")
        ->required();
    report_cmd->add_option("--schema", rp.schema, "Schema file")->required();
    report_cmd->add_option("--features", rp.features,
                           "Features to histogram (default VERB sentenceLength)");
    report_cmd->add_option("--external-scores", rp.external,
                           "Extra scores TSV to bucket against the same breaks");
    report_cmd->add_option("--out", rp.out, "Report (JSON)")->required();
    report_cmd->add_option("--histograms", rp.histograms, "Histogram table (TSV)");
    report_cmd->callback([&] {
        auto pairs = read_bitext_file(rp.bitext);
        auto scored = read_scores_tsv(rp.scores);
        auto schema = FeatureSchema::load(rp.schema);
        auto vectors = read_vectors_tsv(rp.vectors, schema.dimension());
        auto model = ClusterModel::load(rp.cluster);
        std::optional<std::vector<double>> external;
        if (!rp.external.empty()) external = plain_scores(read_scores_tsv(rp.external));
        auto report = report_clusters(pairs, plain_scores(scored), model, vectors, schema,
                                      rp.features, external);
        write_text_file_atomic(rp.out, report.json);
        if (!rp.histograms.empty()) write_text_file_atomic(rp.histograms, report.histograms_tsv);
    });

    // ---- run ----
    struct {
        std::string config, bitext, conllu, sidecar, synthetic_bitext, synthetic_conllu, out;
        int lm_order = -1, pca_k = -1, cluster_k = -1;
    } rn;
    auto* run_cmd = app.add_subcommand("run", "Full staged pipeline driven by a JSON config");
    run_cmd->add_option("--config", rn.config, "Pipeline config (JSON)")->required();
    run_cmd->add_option("--bitext", rn.bitext, "Override the config's bitext path");
    run_cmd->add_option("--conllu", rn.conllu, "Override the config's conllu path");
    run_cmd->add_option("--sidecar", rn.sidecar, "Override the config's sidecar path");
    run_cmd->add_option("--synthetic-bitext", rn.synthetic_bitext,
                        "Override the config's synthetic bitext path");
    run_cmd->add_option("--synthetic-conllu", rn.synthetic_conllu,
                        "Override the config's synthetic conllu path");
    run_cmd->add_option("--out", rn.out, "Override the config's output directory");
    run_cmd->add_option("--lm-order", rn.lm_order, "Override lm_order");
    run_cmd->add_option("--pca-k", rn.pca_k, "Override pca_k");
    run_cmd->add_option("--cluster-k", rn.cluster_k, "Override cluster_k");
    run_cmd->callback([&] {
        auto cfg = PipelineConfig::from_file(rn.config);
        if (!rn.bitext.empty()) cfg.bitext = rn.bitext;
        if (!rn.conllu.empty()) cfg.conllu = rn.conllu;
        if (!rn.sidecar.empty()) cfg.sidecar = rn.sidecar;
        if (!rn.synthetic_bitext.empty()) cfg.synthetic_bitext = rn.synthetic_bitext;
        if (!rn.synthetic_conllu.empty()) cfg.synthetic_conllu = rn.synthetic_conllu;
        if (!rn.out.empty()) cfg.out = rn.out;
        if (rn.lm_order > 0) cfg.lm_order = rn.lm_order;
        if (rn.pca_k > 0) cfg.pca_k = rn.pca_k;
        if (rn.cluster_k > 0) cfg.cluster_k = rn.cluster_k;
        run_pipeline(cfg, std::cerr);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const lalita::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const lalita::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
