#include <algorithm>
#include <cmath>
#include <limits>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "lalita/bitext.hpp"
#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"
#include "lalita/filter.hpp"

#include "test_util.hpp"

using namespace lalita;

namespace {

BitextPair mk(const std::string& id, const std::string& src, const std::string& tgt) {
    return BitextPair{id, src, tgt, {}};
}

AnnotatedSentence single_token_ann(const std::string& id) {
    AnnotatedSentence a;
    a.id = id;
    a.tokens.push_back(Token{"x", "NOUN", 0, "root", {}, std::nullopt});
    a.block_sizes = {1};
    return a;
}

std::vector<AnnotatedSentence> anns_for(const std::vector<BitextPair>& pairs) {
    std::vector<AnnotatedSentence> out;
    for (const auto& p : pairs) out.push_back(single_token_ann(p.id));
    return out;
}

} // namespace

TEST_CASE("roman_fraction counts majority-latin letter tokens") {
    CHECK(roman_fraction("hello world") == 1.0);
    CHECK(roman_fraction("नमस्ते दुनिया") == 0.0);
    CHECK(roman_fraction("hello दुनिया") == 0.5);
    // digits and punctuation tokens have no letters and are excluded
    CHECK(roman_fraction("123 456 . , !") == 0.0);
    CHECK(roman_fraction("123 ok") == 1.0);
    CHECK(roman_fraction("") == 0.0);
    // per-token majority: a token must be more than half latin letters
    CHECK(roman_fraction("okनमस्तेजी") == 0.0);   // latin minority
    CHECK(roman_fraction("helloजी") == 1.0);      // latin majority
    // exact seven of twenty
    CHECK(roman_fraction("time table bus stop ok please welcome "
                         "एक दो तीन चार पाँच छह सात आठ नौ दस ग्यारह बारह सुबह") ==
          0.35);
}

TEST_CASE("length_ratio_ok compares token counts symmetrically") {
    CHECK(length_ratio_ok("a b c d e f g h", "x y", 4.0));      // exactly 4.0
    CHECK(!length_ratio_ok("a b c d e f g h i", "x y", 4.0));   // 4.5
    CHECK(length_ratio_ok("x y", "a b c d e f g h", 4.0));      // symmetric
    CHECK(length_ratio_ok("a", "b", 1.0));
    CHECK(!length_ratio_ok("", "b", 4.0));
    CHECK(!length_ratio_ok("a", "", 4.0));
}

TEST_CASE("dedup keeps the first copy of a repeated source/target pair") {
    std::vector<BitextPair> pairs{mk("a", "s", "t"), mk("b", "s", "t"), mk("c", "s2", "t2"),
                                  mk("d", "s", "t2")};
    auto out = dedup(pairs);
    REQUIRE(out.size() == 3);
    CHECK(out[0].id == "a");
    CHECK(out[1].id == "c");
    CHECK(out[2].id == "d");
}

TEST_CASE("one_to_many_prune drops every pair in a conflict group") {
    std::vector<BitextPair> pairs{mk("a", "s1", "t1"), mk("b", "s1", "t2"), mk("c", "s2", "t3"),
                                  mk("d", "s3", "t3"), mk("e", "s4", "t4")};
    auto out = one_to_many_prune(pairs);
    REQUIRE(out.size() == 1);
    CHECK(out[0].id == "e");
}

TEST_CASE("single_sentence_ok reflects the block count") {
    auto one = single_token_ann("x");
    CHECK(single_sentence_ok(one));
    one.sentence_count_in_doc = 2;
    CHECK(!single_sentence_ok(one));
}

TEST_CASE("filter_pipeline removes exactly one pair per rule on the 8-pair fixture") {
    auto pairs = read_bitext_file(testutil::data_dir() + "/fixtures/filter8.tsv");
    auto anns = parse_conllu_file(testutil::data_dir() + "/fixtures/filter8.conllu");
    REQUIRE(pairs.size() == 8);

    auto res = filter_pipeline(pairs, anns, FilterConfig{});
    CHECK(res.report.input == 8);
    CHECK(res.report.survivors == 3);
    CHECK(res.report.removed_by_rule.at("dedup") == 1);
    CHECK(res.report.removed_by_rule.at("roman_script") == 1);
    CHECK(res.report.removed_by_rule.at("length_ratio") == 1);
    CHECK(res.report.removed_by_rule.at("one_to_many") == 1);
    CHECK(res.report.removed_by_rule.at("single_sentence") == 1);

    std::vector<std::string> ids;
    for (const auto& p : res.pairs) ids.push_back(p.id);
    CHECK(ids == std::vector<std::string>{"f1", "f7", "f8"});

    // boundary survivors: ratio exactly 4.0 and roman fraction exactly 0.35
    auto f7 = std::find_if(res.pairs.begin(), res.pairs.end(),
                           [](const BitextPair& p) { return p.id == "f7"; });
    REQUIRE(f7 != res.pairs.end());
    CHECK(count_tokens(f7->source) == 4 * count_tokens(f7->target));
    auto f8 = std::find_if(res.pairs.begin(), res.pairs.end(),
                           [](const BitextPair& p) { return p.id == "f8"; });
    REQUIRE(f8 != res.pairs.end());
    CHECK(roman_fraction(f8->target) == 0.35);

    // report serializes every rule count
    auto j = nlohmann::json::parse(res.report.to_json());
    CHECK(j["input"] == 8);
    CHECK(j["survivors"] == 3);
    CHECK(j["removed"]["one_to_many"] == 1);

    // filtering the survivors again removes nothing
    auto again = filter_pipeline(res.pairs, anns, FilterConfig{});
    CHECK(again.report.survivors == res.pairs.size());
    for (const auto& [rule, n] : again.report.removed_by_rule) {
        INFO(rule);
        CHECK(n == 0);
    }
}

TEST_CASE("filter_pipeline attributes a removal to the first applicable rule") {
    // violates both the roman rule and the length-ratio rule
    std::vector<BitextPair> pairs{mk("x", "a b c d e f g h i j", "ok"),
                                  mk("y", "w1 w2", "ठीक है जी")};
    auto res = filter_pipeline(pairs, anns_for(pairs), FilterConfig{});
    CHECK(res.report.removed_by_rule.at("roman_script") == 1);
    CHECK(res.report.removed_by_rule.at("length_ratio") == 0);
    CHECK(res.report.survivors == 1);
}

TEST_CASE("filter_pipeline counts one-to-many conflicts on the deduplicated corpus") {
    // "b" conflicts only with "a", and "a" already falls to the roman rule;
    // "b" is still one-to-many because multiplicity is read off the
    // deduplicated corpus, not the survivors of earlier rules.
    std::vector<BitextPair> pairs{mk("a", "shared src", "ok fine"),
                                  mk("b", "shared src", "ठीक ठाक"), mk("c", "solo", "अकेला")};
    auto res = filter_pipeline(pairs, anns_for(pairs), FilterConfig{});
    CHECK(res.report.removed_by_rule.at("roman_script") == 1);
    CHECK(res.report.removed_by_rule.at("one_to_many") == 1);
    REQUIRE(res.report.survivors == 1);
    CHECK(res.pairs[0].id == "c");
}

TEST_CASE("filter_pipeline rules can be disabled individually") {
    std::vector<BitextPair> pairs{mk("a", "one two three four five six seven eight nine", "ok"),
                                  mk("b", "one two three four five six seven eight nine", "ok")};
    FilterConfig cfg;
    cfg.roman_side = FilterConfig::RomanSide::Off;
    cfg.length_ratio_max = std::numeric_limits<double>::infinity();
    cfg.enforce_one_to_one = false;
    cfg.enforce_single_sentence = false;
    auto res = filter_pipeline(pairs, {}, cfg);
    CHECK(res.report.removed_by_rule.at("dedup") == 1); // dedup always applies
    CHECK(res.report.survivors == 1);
}

TEST_CASE("filter_pipeline checks the configured roman side") {
    std::vector<BitextPair> pairs{mk("a", "all english here", "ठीक ठाक बात")};
    FilterConfig cfg;
    cfg.roman_side = FilterConfig::RomanSide::Source;
    auto res = filter_pipeline(pairs, anns_for(pairs), cfg);
    CHECK(res.report.removed_by_rule.at("roman_script") == 1);
}

TEST_CASE("filter_pipeline treats a missing annotation as failing single_sentence") {
    std::vector<BitextPair> pairs{mk("a", "w", "ठीक"), mk("b", "v", "ठाक")};
    auto res = filter_pipeline(pairs, {single_token_ann("a")}, FilterConfig{});
    CHECK(res.report.removed_by_rule.at("single_sentence") == 1);
    REQUIRE(res.report.survivors == 1);
    CHECK(res.pairs[0].id == "a");
}

TEST_CASE("FilterConfig validation rejects out-of-range parameters") {
    FilterConfig cfg;
    cfg.roman_fraction_max = 1.5;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = FilterConfig{};
    cfg.roman_fraction_max = -0.1;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg = FilterConfig{};
    cfg.length_ratio_max = 0.5;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("synthetic_quality_filter applies the inclusive avg_logprob threshold") {
    std::vector<BitextPair> pairs{mk("s1", "w1 w2", "ठीक है"), mk("s2", "w3 w4", "ठाक है"),
                                  mk("s3", "w5 w6", "जी हाँ")};
    pairs[0].sidecar["avg_logprob"] = -1.0;   // boundary: kept
    pairs[1].sidecar["avg_logprob"] = -1.0000001;
    pairs[2].sidecar["avg_logprob"] = -0.2;
    auto anns = anns_for(pairs);
    anns[2].sentence_count_in_doc = 2;

    auto res = synthetic_quality_filter(pairs, anns, -1.0);
    CHECK(res.report.removed_by_rule.at("quality") == 1);
    CHECK(res.report.removed_by_rule.at("single_sentence") == 1);
    REQUIRE(res.report.survivors == 1);
    CHECK(res.pairs[0].id == "s1");
}

TEST_CASE("synthetic_quality_filter requires the avg_logprob sidecar") {
    std::vector<BitextPair> pairs{mk("nolp", "w", "ठीक")};
    CHECK_THROWS_WITH_AS(synthetic_quality_filter(pairs, anns_for(pairs), -1.0),
                         doctest::Contains("nolp"), DataError);
}
