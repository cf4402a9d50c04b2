#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lalita/conllu.hpp"

namespace lalita {

// Interpolated modified Kneser-Ney n-gram model. Lower-order distributions use
// continuation counts; each order carries three count-dependent discounts
// (or a flat 0.75 fallback when the counts-of-counts are degenerate).
class NgramModel {
public:
    static constexpr const char* kBos = "<s>";
    static constexpr const char* kEos = "</s>";
    static constexpr const char* kUnk = "<unk>";

    struct CtxStats {
        double total = 0.0;           // sum of adjusted counts over the context
        std::uint64_t n1 = 0, n2 = 0, n3p = 0;
    };

    int order() const { return order_; }
    const std::vector<std::string>& vocab() const { return vocab_; }
    std::size_t predict_vocab_size() const { return predict_vocab_; }
    const std::vector<std::array<double, 3>>& discounts() const { return discounts_; }
    const std::vector<bool>& discount_fallback() const { return fallback_; }
    std::uint64_t train_sentences() const { return train_sentences_; }
    std::uint64_t train_tokens() const { return train_tokens_; }

    // Natural-log probability of `word` given up to order-1 preceding tokens
    // (most recent last). Unknown strings are mapped to <unk>.
    double log_prob(const std::vector<std::string>& context, const std::string& word) const;

    // Sum of per-position natural-log probabilities including </s>; n_out
    // receives the number of scored positions (tokens + 1).
    double sentence_log_prob(const std::vector<std::string>& tokens, std::size_t* n_out = nullptr) const;

    // exp(-(1/N) * sum ln P); N counts </s> but not <s> pads.
    double perplexity(const std::vector<std::string>& tokens) const;

    std::string to_json() const;
    static NgramModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static NgramModel load(const std::string& path);

    friend NgramModel train_kn(const std::vector<std::vector<std::string>>& corpus, int order);

private:
    using Gram = std::string; // word ids packed as 4-byte little-endian runs

    std::uint32_t id_or_unk(const std::string& word) const;
    double prob_id(const std::uint32_t* ctx, std::size_t ctx_len, std::uint32_t w) const;
    void rebuild_derived();

    int order_ = 0;
    std::vector<std::string> vocab_;  // sorted; includes <s>, </s>, <unk>
    std::unordered_map<std::string, std::uint32_t> word_ids_;
    std::uint32_t bos_ = 0, eos_ = 0, unk_ = 0;
    // counts_[k-1]: adjusted counts for order k; ctx_[k-1]: per-context stats.
    std::vector<std::unordered_map<Gram, std::uint64_t>> counts_;
    std::vector<std::unordered_map<Gram, CtxStats>> ctx_;
    std::vector<std::array<double, 3>> discounts_;
    std::vector<bool> fallback_;
    std::size_t predict_vocab_ = 0;
    std::uint64_t train_sentences_ = 0, train_tokens_ = 0;
};

// Lowercase + NFC-compose each token FORM, order preserved.
std::vector<std::string> normalize_for_lm(const AnnotatedSentence& ann);

// Same normalization for a raw text line, whitespace-tokenized.
std::vector<std::string> normalize_text_for_lm(const std::string& line);

NgramModel train_kn(const std::vector<std::vector<std::string>>& corpus, int order);

} // namespace lalita
