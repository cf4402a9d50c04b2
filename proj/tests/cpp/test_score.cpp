#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "lalita/conllu.hpp"
#include "lalita/errors.hpp"
#include "lalita/features.hpp"
#include "lalita/score.hpp"

#include "test_util.hpp"

using namespace lalita;

namespace {

FeatureSchema tiny_schema() {
    std::array<std::vector<std::string>, FeatureSchema::kGroupCount> groups;
    groups[FeatureSchema::Statistical] = {"slm_ppl"};
    groups[FeatureSchema::Lexical] = {"sentenceLength"};
    groups[FeatureSchema::NamedEntity] = {"LOC", "MISC", "ORG", "PER"};
    groups[FeatureSchema::POS].assign(kUposTags.begin(), kUposTags.end());
    groups[FeatureSchema::DepRel] = {"dep", "root"};
    groups[FeatureSchema::UMF] = {"NoUMF"};
    return FeatureSchema(std::move(groups), false);
}

std::vector<FeatureVector> random_vectors(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(0.0, 20.0);
    std::vector<FeatureVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        FeatureVector fv;
        fv.id = "r" + std::to_string(i);
        for (std::size_t d = 0; d < dim; ++d) fv.values.push_back(val(rng));
        out.push_back(std::move(fv));
    }
    return out;
}

} // namespace

TEST_CASE("fitted components are orthonormal with nonincreasing variance ratios") {
    auto schema = tiny_schema();
    auto vecs = random_vectors(60, schema.dimension(), 31);
    auto model = fit_score_model(vecs, schema, 6);

    REQUIRE(model.n_components() == 6);
    const std::size_t d = model.kept.size();
    for (std::size_t a = 0; a < model.n_components(); ++a) {
        REQUIRE(model.components[a].size() == d);
        for (std::size_t b = a; b < model.n_components(); ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                dot += model.components[a][i] * model.components[b][i];
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 1e-9);
        }
    }
    for (std::size_t i = 1; i < model.explained_variance_ratio.size(); ++i)
        CHECK(model.explained_variance_ratio[i - 1] >= model.explained_variance_ratio[i]);
    double evr_sum = 0.0;
    for (double r : model.explained_variance_ratio) {
        CHECK(r >= 0.0);
        evr_sum += r;
    }
    CHECK(evr_sum <= 1.0 + 1e-9);
    CHECK(model.schema_hash == schema.hash());
}

TEST_CASE("a corpus varying only in sentence length scores monotonically") {
    auto schema = tiny_schema();
    const std::size_t dim = schema.dimension();
    const std::size_t len_idx = *schema.index_of("sentenceLength");

    std::vector<FeatureVector> vecs;
    for (double len : {10.0, 20.0, 30.0}) {
        FeatureVector fv;
        fv.id = "len" + std::to_string(static_cast<int>(len));
        fv.values.assign(dim, 3.0);  // constant elsewhere
        fv.values[len_idx] = len;
        vecs.push_back(std::move(fv));
    }
    auto model = fit_score_model(vecs, schema, 3);

    // every constant feature is dropped, leaving the one varying dimension
    CHECK(model.kept == std::vector<std::size_t>{len_idx});
    CHECK(model.dropped.size() == dim - 1);
    CHECK(model.n_components() == 1);

    // the anchored loading has magnitude one and scores ascend with length
    auto loadings = export_loadings(model);
    CHECK(loadings.front().first == "sentenceLength");
    CHECK(std::abs(loadings.front().second - 1.0) <= 1e-9);
    for (std::size_t i = 1; i < loadings.size(); ++i) CHECK(loadings[i].second == 0.0);

    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& fv : vecs) {
        double s = score(model, fv).lalita;
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("the sign anchor keeps the sentence-length loading nonnegative") {
    auto schema = tiny_schema();
    const std::size_t len_idx = *schema.index_of("sentenceLength");
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        auto vecs = random_vectors(40, schema.dimension(), seed);
        // correlate a few columns with length so the first component loads on it
        for (auto& fv : vecs) {
            fv.values[0] = fv.values[len_idx] * 2.0 + fv.values[0] * 0.1;
            fv.values[2] = fv.values[len_idx] * -1.5 + fv.values[2] * 0.1;
        }
        auto model = fit_score_model(vecs, schema, 4);
        const auto kit = std::find(model.kept.begin(), model.kept.end(), len_idx);
        REQUIRE(kit != model.kept.end());
        const std::size_t pos = static_cast<std::size_t>(kit - model.kept.begin());
        CHECK(model.components[0][pos] >= 0.0);
    }
}

TEST_CASE("constant features are dropped and reported") {
    auto schema = tiny_schema();
    auto vecs = random_vectors(30, schema.dimension(), 77);
    const std::size_t frozen = *schema.index_of("MISC");
    for (auto& fv : vecs) fv.values[frozen] = 4.0;
    auto model = fit_score_model(vecs, schema, 3);

    CHECK(std::find(model.kept.begin(), model.kept.end(), frozen) == model.kept.end());
    CHECK(model.dropped == std::vector<std::string>{"MISC"});
    CHECK(model.stddev[frozen] == 0.0);

    auto loadings = export_loadings(model);
    auto mit = std::find_if(loadings.begin(), loadings.end(),
                            [](const auto& p) { return p.first == "MISC"; });
    REQUIRE(mit != loadings.end());
    CHECK(mit->second == 0.0);
    // sorted by descending magnitude
    for (std::size_t i = 1; i < loadings.size(); ++i)
        CHECK(loadings[i - 1].second >= loadings[i].second);
    CHECK(loadings.size() == schema.dimension());
}

TEST_CASE("score model round-trips through json bitwise") {
    auto schema = tiny_schema();
    auto vecs = random_vectors(25, schema.dimension(), 123);
    auto model = fit_score_model(vecs, schema, 5);
    auto back = ScoreModel::from_json(model.to_json());

    CHECK(back.schema_hash == model.schema_hash);
    CHECK(back.feature_names == model.feature_names);
    CHECK(back.mean == model.mean);
    CHECK(back.stddev == model.stddev);
    CHECK(back.kept == model.kept);
    CHECK(back.dropped == model.dropped);
    CHECK(back.center == model.center);
    CHECK(back.components == model.components);
    CHECK(back.explained_variance_ratio == model.explained_variance_ratio);
    CHECK(back.pc1_sign_flipped == model.pc1_sign_flipped);

    for (const auto& fv : vecs) {
        auto a = score(model, fv);
        auto b = score(back, fv);
        CHECK(a.lalita == b.lalita);
        CHECK(a.extra == b.extra);
    }

    testutil::TempDir tmp;
    model.save(tmp.file("m.json"));
    auto loaded = ScoreModel::load(tmp.file("m.json"));
    CHECK(loaded.components == model.components);

    CHECK_THROWS_AS(ScoreModel::from_json("nah"), DataError);
    CHECK_THROWS_AS(ScoreModel::from_json("{}"), DataError);
}

TEST_CASE("component count is clamped to the surviving dimension") {
    auto schema = tiny_schema();
    auto vecs = random_vectors(20, schema.dimension(), 9);
    // freeze everything except three columns
    for (auto& fv : vecs)
        for (std::size_t i = 3; i < fv.values.size(); ++i) fv.values[i] = 1.0;
    auto model = fit_score_model(vecs, schema, 10);
    CHECK(model.kept.size() == 3);
    CHECK(model.n_components() == 3);
}

TEST_CASE("scores are invariant to the fit row order") {
    auto schema = tiny_schema();
    auto vecs = random_vectors(50, schema.dimension(), 1001);
    auto shuffled = vecs;
    std::mt19937_64 rng(5);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    auto m1 = fit_score_model(vecs, schema, 3);
    auto m2 = fit_score_model(shuffled, schema, 3);
    for (const auto& fv : vecs) {
        CHECK(score(m1, fv).lalita ==
              doctest::Approx(score(m2, fv).lalita).epsilon(1e-9));
    }
}

TEST_CASE("score fitting input validation") {
    auto schema = tiny_schema();
    CHECK_THROWS_AS(fit_score_model(random_vectors(10, schema.dimension(), 1), schema, 0),
                    UsageError);
    CHECK_THROWS_AS(fit_score_model(random_vectors(1, schema.dimension(), 1), schema, 2),
                    DataError);
    CHECK_THROWS_AS(fit_score_model(random_vectors(10, 3, 1), schema, 2), DataError);
    auto same = random_vectors(1, schema.dimension(), 1);
    same.push_back(same[0]);
    same.push_back(same[0]);
    CHECK_THROWS_AS(fit_score_model(same, schema, 2), DataError);

    auto model = fit_score_model(random_vectors(10, schema.dimension(), 1), schema, 2);
    FeatureVector bad{"b", {1.0, 2.0}};
    CHECK_THROWS_AS(score(model, bad), DataError);
}

TEST_CASE("score files round-trip") {
    std::vector<ScoredSentence> rows;
    rows.push_back({"a", 0.1 + 0.2, {}});
    rows.push_back({"b", -3.75, {1.5, -0.25}});

    testutil::TempDir tmp;
    write_scores_tsv(tmp.file("s.tsv"), rows);
    auto back = read_scores_tsv(tmp.file("s.tsv"));
    REQUIRE(back.size() == 2);
    CHECK(back[0].id == "a");
    CHECK(back[0].lalita == rows[0].lalita);
    CHECK(back[1].extra == rows[1].extra);
}
