#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"
#include "lalita/ngram_lm.hpp"

#include "test_util.hpp"

using namespace lalita;

namespace {

// Every context reachable when scoring arbitrary text: windows over
// vocab words of length 0..order-1, with the BOS-padded prefixes included.
std::vector<std::vector<std::string>> reachable_contexts(const NgramModel& m) {
    std::vector<std::vector<std::string>> ctxs;
    ctxs.push_back({});
    if (m.order() == 1) return ctxs;
    std::vector<std::vector<std::string>> frontier{{}};
    auto all_bos = [](const std::vector<std::string>& c) {
        for (const auto& w : c)
            if (w != NgramModel::kBos) return false;
        return true;
    };
    for (int len = 1; len < m.order(); ++len) {
        std::vector<std::vector<std::string>> next;
        for (const auto& base : frontier) {
            for (const auto& w : m.vocab()) {
                // <s> only occurs as a run of leading pads
                if (w == NgramModel::kBos && !all_bos(base)) continue;
                if (w == NgramModel::kEos) continue;
                auto c = base;
                c.push_back(w);
                next.push_back(c);
                ctxs.push_back(c);
            }
        }
        frontier = std::move(next);
        if (ctxs.size() > 4000) break; // keep the sweep small
    }
    return ctxs;
}

double conditional_sum(const NgramModel& m, const std::vector<std::string>& ctx) {
    double sum = 0.0;
    for (const auto& w : m.vocab()) {
        if (w == NgramModel::kBos) continue;
        sum += std::exp(m.log_prob(ctx, w));
    }
    return sum;
}

} // namespace

TEST_CASE("kneser-ney matches the hand-worked single-word corpus") {
    NgramModel m = train_kn({{"a", "a", "a"}}, 1);
    // adjusted unigram counts: a=3, </s>=1; discount fallback 0.75 at the
    // top order; base distribution uniform over {a, </s>, <unk>}.
    CHECK(std::exp(m.log_prob({}, "a")) == doctest::Approx(0.6875).epsilon(1e-12));
    CHECK(std::exp(m.log_prob({}, NgramModel::kEos)) == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(std::exp(m.log_prob({}, NgramModel::kUnk)) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(conditional_sum(m, {}) == doctest::Approx(1.0).epsilon(1e-12));

    std::size_t n = 0;
    double lp = m.sentence_log_prob({"a", "a", "a"}, &n);
    CHECK(n == 4);
    CHECK(lp == doctest::Approx(3 * std::log(0.6875) + std::log(0.1875)).epsilon(1e-12));
    CHECK(m.perplexity({"a", "a", "a"}) == doctest::Approx(std::exp(-lp / 4)).epsilon(1e-12));
}

TEST_CASE("kneser-ney conditionals sum to one over every reachable context") {
    std::mt19937_64 rng(7);
    const std::vector<std::string> lexicon{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::vector<std::string>> corpus;
        std::uniform_int_distribution<int> nsent(2, 6), slen(1, 8), word(0, 4);
        int n = nsent(rng);
        for (int s = 0; s < n; ++s) {
            std::vector<std::string> sent;
            int len = slen(rng);
            for (int i = 0; i < len; ++i) sent.push_back(lexicon[word(rng)]);
            corpus.push_back(sent);
        }
        for (int order = 1; order <= 4; ++order) {
            NgramModel m = train_kn(corpus, order);
            for (const auto& ctx : reachable_contexts(m)) {
                double sum = conditional_sum(m, ctx);
                INFO("order " << order << " ctx len " << ctx.size());
                CHECK(std::abs(sum - 1.0) <= 1e-9);
            }
        }
    }
}

TEST_CASE("kneser-ney maps unknown and reserved strings to <unk>") {
    NgramModel m = train_kn({{"a", "b"}, {"b", "c"}}, 2);
    CHECK(m.log_prob({}, "zebra") == m.log_prob({}, NgramModel::kUnk));
    CHECK(m.log_prob({"zebra"}, "a") == m.log_prob({NgramModel::kUnk}, "a"));
    // literal pad symbols inside text are data, not structure
    CHECK(m.log_prob({}, NgramModel::kBos) == m.log_prob({}, NgramModel::kUnk));
    double with_literal = m.sentence_log_prob({"a", "<s>"});
    double with_unk = m.sentence_log_prob({"a", NgramModel::kUnk});
    CHECK(with_literal == with_unk);
}

TEST_CASE("kneser-ney training maps in-corpus reserved symbols to <unk>") {
    NgramModel clean = train_kn({{"a", "<unk>", "b"}}, 2);
    CHECK(clean.vocab().size() == 5); // a, b, <s>, </s>, <unk>
    NgramModel with_bos = train_kn({{"a", "</s>", "b"}}, 2);
    CHECK(with_bos.vocab().size() == 5);
}

TEST_CASE("kneser-ney model round-trips through json") {
    NgramModel m = train_kn({{"a", "b", "a"}, {"b", "c"}, {"a"}}, 3);
    NgramModel n = NgramModel::from_json(m.to_json());
    CHECK(n.order() == m.order());
    CHECK(n.vocab() == m.vocab());
    CHECK(n.predict_vocab_size() == m.predict_vocab_size());
    CHECK(n.train_sentences() == m.train_sentences());
    CHECK(n.train_tokens() == m.train_tokens());
    for (const auto& ctx :
         std::vector<std::vector<std::string>>{{}, {"a"}, {"a", "b"}, {"zebra", "c"}}) {
        for (const auto& w : {"a", "b", "c", "zebra"}) {
            CHECK(m.log_prob(ctx, w) == n.log_prob(ctx, w));
        }
    }

    testutil::TempDir tmp;
    m.save(tmp.file("lm.json"));
    NgramModel o = NgramModel::load(tmp.file("lm.json"));
    CHECK(o.perplexity({"a", "b", "c"}) == m.perplexity({"a", "b", "c"}));
}

TEST_CASE("kneser-ney load rejects malformed files") {
    CHECK_THROWS_AS(NgramModel::from_json("not json"), DataError);
    CHECK_THROWS_AS(NgramModel::from_json("{}"), DataError);
    CHECK_THROWS_AS(NgramModel::from_json(R"({"format":"x","version":1})"), DataError);
}

TEST_CASE("kneser-ney input validation") {
    CHECK_THROWS_AS(train_kn({}, 2), UsageError);
    CHECK_THROWS_AS(train_kn({{"a"}}, 0), UsageError);
    NgramModel m = train_kn({{"a"}}, 1);
    CHECK_THROWS_AS(m.perplexity({}), DataError);
}

TEST_CASE("higher perplexity for novel sequences than for memorized ones") {
    std::vector<std::vector<std::string>> corpus;
    for (int i = 0; i < 20; ++i) corpus.push_back({"the", "cat", "sat", "down"});
    corpus.push_back({"a", "dog", "ran", "off"});
    NgramModel m = train_kn(corpus, 3);
    CHECK(m.perplexity({"the", "cat", "sat", "down"}) <
          m.perplexity({"down", "sat", "the", "cat"}));
    CHECK(m.perplexity({"the", "cat", "sat", "down"}) < m.perplexity({"tiger", "lily"}));
}

TEST_CASE("lm normalization lowercases and composes forms") {
    AnnotatedSentence ann;
    ann.id = "n";
    ann.tokens.push_back(Token{"Hello", "INTJ", 0, "root", {}, std::nullopt});
    // 'e' + combining acute composes to a single code point
    ann.tokens.push_back(Token{"Café", "NOUN", 1, "obj", {}, std::nullopt});
    ann.block_sizes = {2};
    auto toks = normalize_for_lm(ann);
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == "hello");
    CHECK(toks[1] == "café");

    CHECK(normalize_text_for_lm("  Hello   WORLD École ") ==
          std::vector<std::string>{"hello", "world", "école"});
}

TEST_CASE("discount metadata is exposed per order") {
    NgramModel m = train_kn({{"a", "b", "a", "c"}}, 2);
    REQUIRE(m.discounts().size() == 2);
    REQUIRE(m.discount_fallback().size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        for (double d : m.discounts()[k]) {
            CHECK(d >= 0.0);
            CHECK(d < 3.0);
        }
    }
}
