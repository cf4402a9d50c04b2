#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/jenks.hpp"
#include "lalita/sampler.hpp"

using namespace lalita;

namespace {

BitextPair mk(const std::string& id) { return BitextPair{id, "src " + id, "tgt " + id, {}}; }

// three-cluster model with breaks at 10 and 20
ClusterModel three_clusters() {
    ClusterModel m;
    m.k = 3;
    m.breaks = {10.0, 20.0};
    m.counts = {0, 0, 0};
    return m;
}

ClusteredCorpus corpus_with(const std::vector<std::pair<std::string, double>>& spec,
                            const ClusterModel& model, bool synthetic = false) {
    std::vector<BitextPair> pairs;
    std::vector<double> scores;
    for (const auto& [id, s] : spec) {
        pairs.push_back(mk(id));
        scores.push_back(s);
    }
    return ClusteredCorpus::build(pairs, scores, model, synthetic);
}

} // namespace

TEST_CASE("configuration enumeration counts distinct orderings") {
    auto count = [](std::vector<double> p) { return enumerate_configurations(p).size(); };
    CHECK(count({25, 25, 25, 25}) == 1);
    CHECK(count({70, 10, 10, 10}) == 4);
    CHECK(count({40, 40, 10, 10}) == 6);
    CHECK(count({33.34, 33.34, 33.34, 0}) == 4);
    CHECK(count({60, 20, 20, 0}) == 12);
    CHECK(count({70, 15, 15, 0}) == 12);
    CHECK(count({50, 50, 0, 0}) == 6);
    CHECK(count({75, 25, 0, 0}) == 12);
    CHECK(count({100, 0, 0, 0}) == 4);

    auto all = enumerate_configurations({100, 0, 0, 0});
    CHECK(all.front() == std::vector<double>{0, 0, 0, 100});
    CHECK(all.back() == std::vector<double>{100, 0, 0, 0});
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
    std::set<std::vector<double>> uniq(all.begin(), all.end());
    CHECK(uniq.size() == all.size());

    CHECK_THROWS_AS(enumerate_configurations({50, 50, 10, 0}), UsageError);
    CHECK_THROWS_AS(enumerate_configurations({-10, 110, 0, 0}), UsageError);
}

TEST_CASE("largest-remainder quotas hit the documented worked example") {
    auto q = largest_remainder_quotas({2183, 2515, 2889, 2413}, 100000);
    CHECK(q == std::vector<std::uint64_t>{21830, 25150, 28890, 24130});
}

TEST_CASE("largest-remainder quotas normalize by the actual weight sum") {
    // three equal shares quoted to two decimals sum to 100.02
    auto q = largest_remainder_quotas({33.34, 33.34, 33.34, 0.0}, 3);
    CHECK(q == std::vector<std::uint64_t>{1, 1, 1, 0});
    auto q2 = largest_remainder_quotas({33.34, 33.34, 33.34, 0.0}, 100);
    CHECK(q2 == std::vector<std::uint64_t>{34, 33, 33, 0});
}

TEST_CASE("largest-remainder ties go to the lower index") {
    auto q = largest_remainder_quotas({25, 25, 25, 25}, 2);
    CHECK(q == std::vector<std::uint64_t>{1, 1, 0, 0});
    auto q2 = largest_remainder_quotas({50, 50}, 3);
    CHECK(q2 == std::vector<std::uint64_t>{2, 1});
}

TEST_CASE("largest-remainder quotas always sum to tds") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> w(0.0, 50.0);
    std::uniform_int_distribution<std::uint64_t> t(1, 100000);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> weights{w(rng), w(rng), w(rng), w(rng)};
        if (weights[0] + weights[1] + weights[2] + weights[3] == 0.0) continue;
        const std::uint64_t tds = t(rng);
        auto q = largest_remainder_quotas(weights, tds);
        std::uint64_t sum = 0;
        for (auto v : q) sum += v;
        CHECK(sum == tds);
    }
    CHECK_THROWS_AS(largest_remainder_quotas({0.0, 0.0}, 5), UsageError);
    CHECK_THROWS_AS(largest_remainder_quotas({-1.0, 2.0}, 5), UsageError);
}

TEST_CASE("curation config validation accepts two-decimal rounding slack") {
    CurationConfig cfg;
    cfg.percents = {33.34, 33.34, 33.34, 0.0};
    cfg.tds = 10;
    CHECK_NOTHROW(cfg.validate(4));
    cfg.percents = {33, 33, 33, 0};  // 99: beyond the slack
    CHECK_THROWS_AS(cfg.validate(4), UsageError);
    cfg.percents = {25, 25, 25, 25};
    CHECK_THROWS_AS(cfg.validate(3), UsageError);  // wrong arity
    cfg.percents = {50, 50, 0};
    cfg.tds = 0;
    CHECK_THROWS_AS(cfg.validate(3), UsageError);

    cfg.percents = {33.34, 33.34, 33.34, 0.0};
    CHECK(cfg.label() == "33.34_33.34_33.34_0");
}

TEST_CASE("clustered corpus sorts each cluster by descending score with stable ties") {
    auto model = three_clusters();
    auto cc = corpus_with({{"a", 5.0}, {"b", 25.0}, {"c", 8.0}, {"d", 8.0}, {"e", 15.0}},
                          model);
    REQUIRE(cc.k == 3);
    CHECK(cc.total() == 5);
    REQUIRE(cc.clusters[0].size() == 3);
    CHECK(cc.clusters[0][0].pair.id == "c");  // 8.0 listed before the tie "d"
    CHECK(cc.clusters[0][1].pair.id == "d");
    CHECK(cc.clusters[0][2].pair.id == "a");
    CHECK(cc.clusters[1][0].pair.id == "e");
    CHECK(cc.clusters[2][0].pair.id == "b");
    // boundary score joins the upper cluster
    auto cc2 = corpus_with({{"x", 10.0}}, model);
    CHECK(cc2.clusters[1].size() == 1);
}

TEST_CASE("sample_configuration draws top scores first") {
    auto model = three_clusters();
    auto cc = corpus_with({{"low1", 1.0},
                           {"low2", 2.0},
                           {"low3", 3.0},
                           {"mid1", 11.0},
                           {"mid2", 12.0},
                           {"high1", 30.0}},
                          model);
    CurationConfig cfg;
    cfg.percents = {100, 0, 0};
    cfg.tds = 2;
    auto res = sample_configuration(cc, std::nullopt, cfg);
    REQUIRE(res.pairs.size() == 2);
    CHECK(res.pairs[0].id == "low3");
    CHECK(res.pairs[1].id == "low2");
    CHECK(res.manifest.quota == std::vector<std::uint64_t>{2, 0, 0});
    CHECK(res.manifest.real == std::vector<std::uint64_t>{2, 0, 0});
    CHECK(res.manifest.synthetic == std::vector<std::uint64_t>{0, 0, 0});
    CHECK(res.manifest.tokens.source == 4);  // two 2-token sources
}

TEST_CASE("synthetic pairs fill a cluster only after its real pairs run out") {
    auto model = three_clusters();
    auto cc = corpus_with({{"r1", 3.0}, {"r2", 4.0}, {"m", 15.0}, {"h", 25.0}}, model);
    auto syn = corpus_with({{"s1", 2.0}, {"s2", 5.0}, {"s3", 1.0}, {"sm", 12.0}}, model, true);

    CurationConfig cfg;
    cfg.percents = {100, 0, 0};
    cfg.tds = 4;
    auto res = sample_configuration(cc, syn, cfg);
    REQUIRE(res.pairs.size() == 4);
    // both real pairs first (descending score), then the two best synthetic
    CHECK(res.pairs[0].id == "r2");
    CHECK(res.pairs[1].id == "r1");
    CHECK(res.pairs[2].id == "s2");
    CHECK(res.pairs[3].id == "s1");
    CHECK(res.manifest.real == std::vector<std::uint64_t>{2, 0, 0});
    CHECK(res.manifest.synthetic == std::vector<std::uint64_t>{2, 0, 0});

    // augmentation disabled: the same draw fails with the cluster shortfall
    cfg.allow_augmentation = false;
    CHECK_THROWS_WITH_AS(sample_configuration(cc, syn, cfg),
                         doctest::Contains("cluster 0 short 2"), DataError);

    // shortfalls are collected across clusters before failing
    cfg.allow_augmentation = true;
    cfg.percents = {50, 0, 50};
    cfg.tds = 10;
    CHECK_THROWS_WITH_AS(sample_configuration(cc, syn, cfg), doctest::Contains("cluster 2"),
                         DataError);

    // mismatched synthetic clustering is rejected
    ClusterModel two;
    two.k = 2;
    two.breaks = {10.0};
    auto syn2 = corpus_with({{"q", 1.0}}, two, true);
    cfg.percents = {100, 0, 0};
    cfg.tds = 1;
    CHECK_THROWS_AS(sample_configuration(cc, syn2, cfg), UsageError);
}

TEST_CASE("sample manifests serialize their accounting") {
    auto model = three_clusters();
    auto cc = corpus_with({{"a", 1.0}, {"b", 15.0}, {"c", 25.0}}, model);
    CurationConfig cfg;
    cfg.percents = {0, 0, 100};
    cfg.tds = 1;
    auto res = sample_configuration(cc, std::nullopt, cfg);
    auto j = nlohmann::json::parse(res.manifest.to_json());
    CHECK(j["tds"] == 1);
    CHECK(j["quota"] == nlohmann::json::array({0, 0, 1}));
    CHECK(j["real"][2] == 1);
    CHECK(j["tokens"]["source"] == 2);
}

TEST_CASE("proportional baseline mirrors the fit-corpus cluster shares") {
    auto model = three_clusters();
    model.counts = {60, 30, 10};
    auto cc = corpus_with({{"a1", 1}, {"a2", 2}, {"a3", 3}, {"a4", 4}, {"a5", 5}, {"a6", 6},
                           {"b1", 11}, {"b2", 12}, {"b3", 13}, {"c1", 21}},
                          model);
    auto res = baseline_proportional(cc, model, 10);
    CHECK(res.manifest.quota == std::vector<std::uint64_t>{6, 3, 1});
    CHECK(res.pairs.size() == 10);
    // manifest percents echo the fit shares
    CHECK(res.manifest.percents == std::vector<double>{60.0, 30.0, 10.0});

    ClusterModel wrong = model;
    wrong.k = 2;
    CHECK_THROWS_AS(baseline_proportional(cc, wrong, 5), UsageError);
}

TEST_CASE("random sampling is seeded, order-preserving, and duplicate-free") {
    std::vector<BitextPair> pairs;
    for (int i = 0; i < 50; ++i) pairs.push_back(mk("p" + std::to_string(i)));

    auto a = random_sample(pairs, 20, 42);
    auto b = random_sample(pairs, 20, 42);
    auto c = random_sample(pairs, 20, 43);
    CHECK(a == b);
    CHECK(a != c);
    REQUIRE(a.size() == 20);

    std::set<std::string> seen;
    std::vector<std::size_t> positions;
    for (const auto& p : a) {
        CHECK(seen.insert(p.id).second);
        auto it = std::find_if(pairs.begin(), pairs.end(),
                               [&](const BitextPair& q) { return q.id == p.id; });
        positions.push_back(static_cast<std::size_t>(it - pairs.begin()));
    }
    CHECK(std::is_sorted(positions.begin(), positions.end()));

    CHECK(random_sample(pairs, 50, 7).size() == 50);
    CHECK_THROWS_AS(random_sample(pairs, 51, 7), UsageError);
}

TEST_CASE("stepwise ordering sorts or shuffles and reports cut points") {
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < 10; ++i)
        pairs.push_back(ScoredPair{mk("p" + std::to_string(i)), static_cast<double>((i * 7) % 10)});

    auto inc = stepwise_order(pairs, OrderStrategy::IncPCA, 3, 0);
    for (std::size_t i = 1; i < inc.pairs.size(); ++i)
        CHECK(inc.pairs[i - 1].score <= inc.pairs[i].score);
    CHECK(inc.cut_points == std::vector<std::uint64_t>{3, 6, 9, 10});

    auto dec = stepwise_order(pairs, OrderStrategy::DecPCA, 5, 0);
    for (std::size_t i = 1; i < dec.pairs.size(); ++i)
        CHECK(dec.pairs[i - 1].score >= dec.pairs[i].score);
    CHECK(dec.cut_points == std::vector<std::uint64_t>{5, 10});

    auto rs1 = stepwise_order(pairs, OrderStrategy::RS, 4, 9);
    auto rs2 = stepwise_order(pairs, OrderStrategy::RS, 4, 9);
    REQUIRE(rs1.pairs.size() == pairs.size());
    for (std::size_t i = 0; i < rs1.pairs.size(); ++i)
        CHECK(rs1.pairs[i].pair.id == rs2.pairs[i].pair.id);
    std::set<std::string> ids;
    for (const auto& p : rs1.pairs) ids.insert(p.pair.id);
    CHECK(ids.size() == pairs.size());

    CHECK(parse_order_strategy("incpca") == OrderStrategy::IncPCA);
    CHECK(parse_order_strategy("decpca") == OrderStrategy::DecPCA);
    CHECK(parse_order_strategy("rs") == OrderStrategy::RS);
    CHECK_THROWS_AS(parse_order_strategy("zigzag"), UsageError);
    CHECK_THROWS_AS(stepwise_order(pairs, OrderStrategy::RS, 0, 1), UsageError);

    // ties keep input order under both sorts
    std::vector<ScoredPair> ties{{mk("t1"), 1.0}, {mk("t2"), 1.0}, {mk("t3"), 0.5}};
    auto ti = stepwise_order(ties, OrderStrategy::IncPCA, 10, 0);
    CHECK(ti.pairs[0].pair.id == "t3");
    CHECK(ti.pairs[1].pair.id == "t1");
    CHECK(ti.pairs[2].pair.id == "t2");
}

TEST_CASE("token budget totals whitespace tokens per side") {
    std::vector<BitextPair> pairs{{"a", "one two three", "एक दो", {}},
                                  {"b", "four", "तीन चार पाँच", {}}};
    auto tb = token_budget(pairs);
    CHECK(tb.source == 4);
    CHECK(tb.target == 5);
}
