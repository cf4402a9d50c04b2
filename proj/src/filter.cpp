#include "lalita/filter.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/unicode.hpp"

namespace lalita {

void FilterConfig::validate() const {
    if (roman_fraction_max < 0.0 || roman_fraction_max > 1.0)
        throw UsageError("roman_fraction_max must lie in [0, 1], got " +
                         std::to_string(roman_fraction_max));
    if (!(length_ratio_max >= 1.0))
        throw UsageError("length_ratio_max must be >= 1, got " +
                         std::to_string(length_ratio_max));
}

std::string FilterReport::to_json() const {
    nlohmann::json j;
    j["input"] = input;
    j["survivors"] = survivors;
    j["removed"] = nlohmann::json::object();
    for (const auto& [rule, n] : removed_by_rule) j["removed"][rule] = n;
    return j.dump(2);
}

std::vector<BitextPair> dedup(const std::vector<BitextPair>& pairs) {
    std::vector<BitextPair> out;
    out.reserve(pairs.size());
    std::unordered_set<std::string> seen;
    for (const auto& p : pairs) {
        std::string key = p.source + '\t' + p.target;
        if (seen.insert(std::move(key)).second) out.push_back(p);
    }
    return out;
}

double roman_fraction(const std::string& text) {
    std::size_t letter_tokens = 0;
    std::size_t roman_tokens = 0;
    for (const auto& tok : whitespace_tokens(text)) {
        std::size_t letters = 0;
        std::size_t ascii = 0;
        for (char32_t cp : unicode::decode_utf8(tok)) {
            if (unicode::is_letter(cp)) {
                ++letters;
                if (unicode::is_ascii_letter(cp)) ++ascii;
            }
        }
        if (letters == 0) continue;
        ++letter_tokens;
        if (2 * ascii > letters) ++roman_tokens;
    }
    if (letter_tokens == 0) return 0.0;
    return static_cast<double>(roman_tokens) / static_cast<double>(letter_tokens);
}

bool length_ratio_ok(const std::string& src, const std::string& tgt, double max_ratio) {
    const auto ls = static_cast<double>(count_tokens(src));
    const auto lt = static_cast<double>(count_tokens(tgt));
    if (ls == 0.0 || lt == 0.0) return false;
    const double ratio = ls > lt ? ls / lt : lt / ls;
    return ratio <= max_ratio;
}

std::vector<BitextPair> one_to_many_prune(const std::vector<BitextPair>& pairs) {
    std::unordered_map<std::string, std::unordered_set<std::string>> by_source;
    std::unordered_map<std::string, std::unordered_set<std::string>> by_target;
    for (const auto& p : pairs) {
        by_source[p.source].insert(p.target);
        by_target[p.target].insert(p.source);
    }
    std::vector<BitextPair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        if (by_source.at(p.source).size() == 1 && by_target.at(p.target).size() == 1)
            out.push_back(p);
    }
    return out;
}

bool single_sentence_ok(const AnnotatedSentence& ann) {
    return ann.sentence_count_in_doc == 1;
}

namespace {

std::unordered_map<std::string, const AnnotatedSentence*>
index_annotations(const std::vector<AnnotatedSentence>& annotations) {
    std::unordered_map<std::string, const AnnotatedSentence*> idx;
    idx.reserve(annotations.size());
    for (const auto& a : annotations) idx.emplace(a.id, &a);
    return idx;
}

} // namespace

FilterResult filter_pipeline(const std::vector<BitextPair>& pairs,
                             const std::vector<AnnotatedSentence>& annotations,
                             const FilterConfig& cfg) {
    cfg.validate();
    FilterResult res;
    res.report.input = pairs.size();
    auto& removed = res.report.removed_by_rule;
    removed["dedup"] = 0;
    removed["roman_script"] = 0;
    removed["length_ratio"] = 0;
    removed["one_to_many"] = 0;
    removed["single_sentence"] = 0;

    std::vector<BitextPair> alive = dedup(pairs);
    removed["dedup"] = pairs.size() - alive.size();

    // Conflict multiplicity is a property of the deduplicated corpus: a pair
    // is one-to-many if its source or target has several distinct partners
    // there, even when some conflicting partner also falls to an earlier
    // rule. Each removal is attributed to the first rule that fires.
    std::unordered_map<std::string, std::unordered_set<std::string>> by_source;
    std::unordered_map<std::string, std::unordered_set<std::string>> by_target;
    if (cfg.enforce_one_to_one) {
        for (const auto& p : alive) {
            by_source[p.source].insert(p.target);
            by_target[p.target].insert(p.source);
        }
    }
    auto idx = index_annotations(annotations);

    std::vector<BitextPair> kept;
    kept.reserve(alive.size());
    for (auto& p : alive) {
        if (cfg.roman_side != FilterConfig::RomanSide::Off) {
            const std::string& side =
                cfg.roman_side == FilterConfig::RomanSide::Source ? p.source : p.target;
            if (roman_fraction(side) > cfg.roman_fraction_max) {
                ++removed["roman_script"];
                continue;
            }
        }
        if (std::isfinite(cfg.length_ratio_max) &&
            !length_ratio_ok(p.source, p.target, cfg.length_ratio_max)) {
            ++removed["length_ratio"];
            continue;
        }
        if (cfg.enforce_one_to_one && (by_source.at(p.source).size() > 1 ||
                                       by_target.at(p.target).size() > 1)) {
            ++removed["one_to_many"];
            continue;
        }
        if (cfg.enforce_single_sentence) {
            auto it = idx.find(p.id);
            if (it == idx.end() || !single_sentence_ok(*it->second)) {
                ++removed["single_sentence"];
                continue;
            }
        }
        kept.push_back(std::move(p));
    }

    res.report.survivors = kept.size();
    res.pairs = std::move(kept);
    return res;
}

FilterResult synthetic_quality_filter(const std::vector<BitextPair>& pairs,
                                      const std::vector<AnnotatedSentence>& annotations,
                                      double min_loglik) {
    FilterResult res;
    res.report.input = pairs.size();
    auto& removed = res.report.removed_by_rule;
    removed["quality"] = 0;
    removed["single_sentence"] = 0;

    auto idx = index_annotations(annotations);
    for (const auto& p : pairs) {
        auto lp = p.sidecar_value("avg_logprob");
        if (!lp)
            throw DataError("synthetic pair '" + p.id + "' is missing the avg_logprob sidecar");
        if (*lp < min_loglik) {
            ++removed["quality"];
            continue;
        }
        auto it = idx.find(p.id);
        if (it == idx.end() || !single_sentence_ok(*it->second)) {
            ++removed["single_sentence"];
            continue;
        }
        res.pairs.push_back(p);
    }
    res.report.survivors = res.pairs.size();
    return res;
}

} // namespace lalita
