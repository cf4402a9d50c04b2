#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lalita/bitext.hpp"
#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"
#include "lalita/filter.hpp"
#include "lalita/jenks.hpp"
#include "lalita/ngram_lm.hpp"
#include "lalita/pipeline.hpp"
#include "lalita/sampler.hpp"

namespace py = pybind11;
using namespace lalita;

namespace {

py::dict report_to_dict(const FilterReport& r) {
    py::dict removed;
    for (const auto& [rule, n] : r.removed_by_rule) removed[py::str(rule)] = n;
    py::dict d;
    d["input"] = r.input;
    d["survivors"] = r.survivors;
    d["removed_by_rule"] = removed;
    return d;
}

FilterConfig make_filter_config(double roman_fraction_max, const std::string& roman_side,
                                std::optional<double> length_ratio_max, bool enforce_one_to_one,
                                bool enforce_single_sentence) {
    FilterConfig cfg;
    cfg.roman_fraction_max = roman_fraction_max;
    if (roman_side == "source")
        cfg.roman_side = FilterConfig::RomanSide::Source;
    else if (roman_side == "target")
        cfg.roman_side = FilterConfig::RomanSide::Target;
    else if (roman_side == "off")
        cfg.roman_side = FilterConfig::RomanSide::Off;
    else
        throw UsageError("roman_side must be source, target, or off; got '" + roman_side + "'");
    cfg.length_ratio_max =
        length_ratio_max ? *length_ratio_max : std::numeric_limits<double>::infinity();
    cfg.enforce_one_to_one = enforce_one_to_one;
    cfg.enforce_single_sentence = enforce_single_sentence;
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(_lalita, m) {
    m.doc() = "Corpus curation by linguistic complexity: filtering, language-model "
              "perplexity, interval clustering, and cluster-mix sampling.";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    // ---- filtering -------------------------------------------------------
    m.def(
        "filter_bitext",
        [](const std::string& bitext, const std::string& conllu, const std::string& out,
           double roman_fraction_max, const std::string& roman_side,
           std::optional<double> length_ratio_max, bool enforce_one_to_one,
           bool enforce_single_sentence) {
            const auto cfg =
                make_filter_config(roman_fraction_max, roman_side, length_ratio_max,
                                   enforce_one_to_one, enforce_single_sentence);
            const auto pairs = read_bitext_file(bitext);
            const auto anns = parse_conllu_file(conllu);
            const FilterResult res = filter_pipeline(pairs, anns, cfg);
            write_bitext_file(out, res.pairs);
            return report_to_dict(res.report);
        },
        py::arg("bitext"), py::arg("conllu"), py::arg("out"),
        py::arg("roman_fraction_max") = 0.35, py::arg("roman_side") = "target",
        py::arg("length_ratio_max") = std::optional<double>(4.0),
        py::arg("enforce_one_to_one") = true, py::arg("enforce_single_sentence") = true,
        "Apply the parallel-corpus hygiene rules and write the survivors; "
        "returns the removal report as a dict.");

    m.def(
        "synthetic_filter",
        [](const std::string& bitext, const std::string& conllu, const std::string& out,
           double min_avg_logprob) {
            const auto pairs = read_bitext_file(bitext);
            const auto anns = parse_conllu_file(conllu);
            const FilterResult res = synthetic_quality_filter(pairs, anns, min_avg_logprob);
            write_bitext_file(out, res.pairs);
            return report_to_dict(res.report);
        },
        py::arg("bitext"), py::arg("conllu"), py::arg("out"),
        py::arg("min_avg_logprob") = -1.0,
        "Quality-gate machine-generated pairs on their avg_logprob sidecar.");

    m.def("roman_fraction", &roman_fraction, py::arg("text"),
          "Fraction of whitespace tokens whose letters are majority Basic Latin.");

    // ---- language model --------------------------------------------------
    py::class_<NgramModel>(m, "LanguageModel",
                           "Interpolated modified Kneser-Ney n-gram language model.")
        .def_static(
            "train",
            [](const std::vector<std::vector<std::string>>& corpus, int order) {
                return train_kn(corpus, order);
            },
            py::arg("corpus"), py::arg("order") = 5,
            "Train from tokenized sentences (lists of token strings).")
        .def_static("load", &NgramModel::load, py::arg("path"))
        .def("save", &NgramModel::save, py::arg("path"))
        .def_property_readonly("order", &NgramModel::order)
        .def_property_readonly("vocab", &NgramModel::vocab)
        .def("log_prob", &NgramModel::log_prob, py::arg("context"), py::arg("word"),
             "Natural-log probability of word given the preceding tokens.")
        .def("perplexity",
             [](const NgramModel& lm, const std::vector<std::string>& tokens) {
                 return lm.perplexity(tokens);
             },
             py::arg("tokens"))
        .def("__repr__", [](const NgramModel& lm) {
            return "<LanguageModel order=" + std::to_string(lm.order()) +
                   " vocab=" + std::to_string(lm.vocab().size()) + ">";
        });

    m.def("normalize_tokens", &normalize_text_for_lm, py::arg("text"),
          "Whitespace-tokenize and apply the LM normalization (lowercase, NFC).");

    // ---- clustering ------------------------------------------------------
    py::class_<ClusterModel>(m, "ClusterModel",
                             "Contiguous-interval clustering of scores; a score equal to a "
                             "break belongs to the higher cluster.")
        .def_static(
            "fit",
            [](const std::vector<double>& scores, int k, std::size_t subsample,
               std::uint64_t seed) { return fit_cluster_model(scores, k, subsample, seed); },
            py::arg("scores"), py::arg("k"), py::arg("subsample") = 10000,
            py::arg("seed") = 12345,
            "Exact minimum-SSE interval partition plus a silhouette estimate.")
        .def_static("load", &ClusterModel::load, py::arg("path"))
        .def("save", &ClusterModel::save, py::arg("path"))
        .def_readonly("k", &ClusterModel::k)
        .def_readonly("breaks", &ClusterModel::breaks)
        .def_readonly("counts", &ClusterModel::counts)
        .def_readonly("silhouette", &ClusterModel::silhouette)
        .def_readonly("silhouette_sample", &ClusterModel::silhouette_sample)
        .def("assign", [](const ClusterModel& m_, double s) { return assign_cluster(m_, s); },
             py::arg("score"))
        .def("__repr__", [](const ClusterModel& m_) {
            return "<ClusterModel k=" + std::to_string(m_.k) + ">";
        });

    m.def(
        "silhouette",
        [](const std::vector<double>& scores, const std::vector<int>& labels,
           std::size_t subsample, std::uint64_t seed) {
            return silhouette(scores, labels, subsample, seed);
        },
        py::arg("scores"), py::arg("labels"), py::arg("subsample") = 10000,
        py::arg("seed") = 12345,
        "Mean silhouette coefficient under 1-D absolute distance.");

    // ---- sampling --------------------------------------------------------
    m.def("enumerate_configurations", &enumerate_configurations, py::arg("percents"),
          "All distinct orderings of a cluster-percent multiset, sorted.");

    m.def("largest_remainder_quotas", &largest_remainder_quotas, py::arg("weights"),
          py::arg("tds"),
          "Integer quotas proportional to weights, summing exactly to tds; "
          "remainder ties favor the lower index.");

    // ---- whole pipeline --------------------------------------------------
    m.def(
        "run_pipeline",
        [](const std::string& config, std::optional<std::string> out) {
            PipelineConfig cfg = PipelineConfig::from_file(config);
            if (out) cfg.out = *out;
            std::ostringstream log;
            run_pipeline(cfg, log);
            return log.str();
        },
        py::arg("config"), py::arg("out") = std::nullopt,
        py::call_guard<py::gil_scoped_release>(),
        "Run the staged pipeline from a JSON config; returns the stage log. "
        "`out` overrides the config's output directory.");
}
