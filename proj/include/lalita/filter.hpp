#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lalita/bitext.hpp"
#include "lalita/conllu.hpp"

namespace lalita {

struct FilterConfig {
    double roman_fraction_max = 0.35;
    enum class RomanSide { Source, Target, Off };
    RomanSide roman_side = RomanSide::Target;
    // Set to infinity to disable the length-ratio rule.
    double length_ratio_max = 4.0;
    bool enforce_one_to_one = true;
    bool enforce_single_sentence = true;
    double synthetic_loglik_min = -1.0;

    void validate() const;
};

// Rule names, in application order: dedup, roman_script, length_ratio,
// one_to_many, single_sentence.
struct FilterReport {
    std::map<std::string, std::size_t> removed_by_rule;
    std::size_t input = 0;
    std::size_t survivors = 0;

    std::string to_json() const;
};

std::vector<BitextPair> dedup(const std::vector<BitextPair>& pairs);

// Fraction of whitespace tokens whose alphabetic characters are majority
// Basic-Latin letters; tokens without alphabetic characters don't count.
double roman_fraction(const std::string& text);

bool length_ratio_ok(const std::string& src, const std::string& tgt, double max_ratio);

std::vector<BitextPair> one_to_many_prune(const std::vector<BitextPair>& pairs);

bool single_sentence_ok(const AnnotatedSentence& ann);

struct FilterResult {
    std::vector<BitextPair> pairs;
    FilterReport report;
};

// Applies the hygiene rules in order; each removal is attributed to the
// first rule that fires. Pairs without an annotation fall under the
// single_sentence rule when that rule is on.
FilterResult filter_pipeline(const std::vector<BitextPair>& pairs,
                             const std::vector<AnnotatedSentence>& annotations,
                             const FilterConfig& cfg);

// Synthetic bitext quality gate: avg_logprob >= min_loglik (inclusive) and
// the source parse is a single sentence.
FilterResult synthetic_quality_filter(const std::vector<BitextPair>& pairs,
                                      const std::vector<AnnotatedSentence>& annotations,
                                      double min_loglik);

} // namespace lalita
