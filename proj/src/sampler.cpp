#include "lalita/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"
#include "lalita/rng.hpp"

namespace lalita {

void CurationConfig::validate(int k) const {
    if (percents.size() != static_cast<std::size_t>(k))
        throw UsageError("configuration has " + std::to_string(percents.size()) +
                         " percents but the cluster model has k=" + std::to_string(k));
    double sum = 0.0;
    for (double p : percents) {
        if (p < 0.0) throw UsageError("configuration percents must be nonnegative");
        sum += p;
    }
    // 0.05 of slack admits percents quoted to two decimals (e.g. three 33.34
    // shares summing to 100.02); quotas are normalized by the actual sum.
    if (std::abs(sum - 100.0) > 0.05)
        throw UsageError("configuration percents must sum to 100, got " + format_double(sum));
    if (tds < 1) throw UsageError("tds must be >= 1");
}

std::string CurationConfig::label() const {
    std::string out;
    for (std::size_t i = 0; i < percents.size(); ++i) {
        if (i) out += '_';
        out += format_double(percents[i]);
    }
    return out;
}

std::vector<std::vector<double>> enumerate_configurations(const std::vector<double>& percents) {
    double sum = 0.0;
    for (double p : percents) {
        if (p < 0.0) throw UsageError("configuration percents must be nonnegative");
        sum += p;
    }
    if (std::abs(sum - 100.0) > 0.05)
        throw UsageError("configuration percents must sum to 100, got " + format_double(sum));
    std::vector<double> cur(percents);
    std::sort(cur.begin(), cur.end());
    std::vector<std::vector<double>> out;
    do {
        out.push_back(cur);
    } while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

std::vector<std::uint64_t> largest_remainder_quotas(const std::vector<double>& weights,
                                                    std::uint64_t tds) {
    const std::size_t k = weights.size();
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw UsageError("quota weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw UsageError("quota weights must not all be zero");

    std::vector<std::uint64_t> quota(k, 0);
    std::vector<double> remainder(k, 0.0);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double exact = static_cast<double>(tds) * weights[i] / total;
        quota[i] = static_cast<std::uint64_t>(std::floor(exact));
        remainder[i] = exact - std::floor(exact);
        assigned += quota[i];
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return a < b;  // ties to the lower cluster index
    });
    for (std::size_t i = 0; assigned < tds && i < k; ++i, ++assigned) ++quota[order[i]];
    if (assigned != tds) throw InternalError("largest-remainder rounding failed to reach tds");
    return quota;
}

ClusteredCorpus ClusteredCorpus::build(const std::vector<BitextPair>& pairs,
                                       const std::vector<double>& scores,
                                       const ClusterModel& model, bool synthetic) {
    if (pairs.size() != scores.size())
        throw UsageError("clustered corpus: " + std::to_string(pairs.size()) + " pairs but " +
                         std::to_string(scores.size()) + " scores");
    ClusteredCorpus out;
    out.k = model.k;
    out.synthetic = synthetic;
    out.clusters.resize(static_cast<std::size_t>(model.k));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int c = assign_cluster(model, scores[i]);
        out.clusters[static_cast<std::size_t>(c)].push_back(ScoredPair{pairs[i], scores[i]});
    }
    for (auto& cl : out.clusters)
        std::stable_sort(cl.begin(), cl.end(),
                         [](const ScoredPair& a, const ScoredPair& b) { return a.score > b.score; });
    return out;
}

std::size_t ClusteredCorpus::total() const {
    std::size_t n = 0;
    for (const auto& cl : clusters) n += cl.size();
    return n;
}

TokenBudget token_budget(const std::vector<BitextPair>& pairs) {
    TokenBudget tb;
    for (const auto& p : pairs) {
        tb.source += count_tokens(p.source);
        tb.target += count_tokens(p.target);
    }
    return tb;
}

std::string SampleManifest::to_json() const {
    nlohmann::json j;
    j["percents"] = percents;
    j["tds"] = tds;
    j["seed"] = seed;
    j["quota"] = quota;
    j["real"] = real;
    j["synthetic"] = synthetic;
    j["tokens"] = {{"source", tokens.source}, {"target", tokens.target}};
    return j.dump(2);
}

namespace {

SampleResult materialize(const ClusteredCorpus& corpus,
                         const std::optional<ClusteredCorpus>& synthetic,
                         const std::vector<std::uint64_t>& quota,
                         const std::vector<double>& manifest_percents, std::uint64_t tds,
                         std::uint64_t seed, bool allow_augmentation) {
    const std::size_t k = corpus.clusters.size();
    if (synthetic && synthetic->clusters.size() != k)
        throw UsageError("synthetic corpus was clustered with a different k");

    std::vector<std::uint64_t> take_real(k, 0), take_syn(k, 0), short_by(k, 0);
    bool any_short = false;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t avail = corpus.clusters[i].size();
        take_real[i] = std::min<std::uint64_t>(quota[i], avail);
        std::uint64_t deficit = quota[i] - take_real[i];
        if (deficit > 0 && allow_augmentation && synthetic) {
            take_syn[i] = std::min<std::uint64_t>(deficit, synthetic->clusters[i].size());
            deficit -= take_syn[i];
        }
        if (deficit > 0) {
            short_by[i] = deficit;
            any_short = true;
        }
    }
    if (any_short) {
        std::string msg = "insufficient pairs for the requested quotas:";
        for (std::size_t i = 0; i < k; ++i)
            if (short_by[i] > 0)
                msg += " cluster " + std::to_string(i) + " short " + std::to_string(short_by[i]) +
                       " pair(s);";
        msg.pop_back();
        throw DataError(msg);
    }

    SampleResult res;
    res.manifest.percents = manifest_percents;
    res.manifest.tds = tds;
    res.manifest.seed = seed;
    res.manifest.quota = quota;
    res.manifest.real = take_real;
    res.manifest.synthetic = take_syn;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::uint64_t t = 0; t < take_real[i]; ++t)
            res.pairs.push_back(corpus.clusters[i][t].pair);
        for (std::uint64_t t = 0; t < take_syn[i]; ++t)
            res.pairs.push_back(synthetic->clusters[i][t].pair);
    }
    res.manifest.tokens = token_budget(res.pairs);
    return res;
}

} // namespace

SampleResult sample_configuration(const ClusteredCorpus& corpus,
                                  const std::optional<ClusteredCorpus>& synthetic,
                                  const CurationConfig& cfg) {
    cfg.validate(corpus.k);
    const auto quota = largest_remainder_quotas(cfg.percents, cfg.tds);
    return materialize(corpus, synthetic, quota, cfg.percents, cfg.tds, cfg.seed,
                       cfg.allow_augmentation);
}

SampleResult baseline_proportional(const ClusteredCorpus& corpus, const ClusterModel& model,
                                   std::uint64_t tds) {
    if (tds < 1) throw UsageError("tds must be >= 1");
    if (model.k != corpus.k) throw UsageError("cluster model k does not match the corpus");
    std::vector<double> weights;
    double total = 0.0;
    for (std::uint64_t c : model.counts) {
        weights.push_back(static_cast<double>(c));
        total += static_cast<double>(c);
    }
    const auto quota = largest_remainder_quotas(weights, tds);
    std::vector<double> shares;
    for (double w : weights) shares.push_back(100.0 * w / total);
    return materialize(corpus, std::nullopt, quota, shares, tds, 0, false);
}

std::vector<BitextPair> random_sample(const std::vector<BitextPair>& pairs, std::uint64_t tds,
                                      std::uint64_t seed) {
    if (tds > pairs.size())
        throw UsageError("cannot sample " + std::to_string(tds) + " pairs from " +
                         std::to_string(pairs.size()));
    Rng rng(seed);
    std::vector<BitextPair> out;
    out.reserve(tds);
    for (std::size_t i : rng.sample_indices(pairs.size(), tds)) out.push_back(pairs[i]);
    return out;
}

OrderStrategy parse_order_strategy(const std::string& name) {
    if (name == "incpca") return OrderStrategy::IncPCA;
    if (name == "decpca") return OrderStrategy::DecPCA;
    if (name == "rs") return OrderStrategy::RS;
    throw UsageError("unknown ordering strategy '" + name + "' (expected incpca, decpca, or rs)");
}

OrderResult stepwise_order(std::vector<ScoredPair> pairs, OrderStrategy strategy,
                           std::uint64_t increment, std::uint64_t seed) {
    if (increment < 1) throw UsageError("increment must be >= 1");
    switch (strategy) {
    case OrderStrategy::IncPCA:
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
        break;
    case OrderStrategy::DecPCA:
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const ScoredPair& a, const ScoredPair& b) { return a.score > b.score; });
        break;
    case OrderStrategy::RS: {
        Rng rng(seed);
        rng.shuffle(pairs);
        break;
    }
    }
    OrderResult res;
    res.pairs = std::move(pairs);
    const std::uint64_t n = res.pairs.size();
    for (std::uint64_t p = increment; p < n; p += increment) res.cut_points.push_back(p);
    if (n > 0) res.cut_points.push_back(n);
    return res;
}

} // namespace lalita
