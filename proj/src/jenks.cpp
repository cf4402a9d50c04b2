#include "lalita/jenks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"
#include "lalita/rng.hpp"

namespace lalita {

ClusterModel jenks_breaks(const std::vector<double>& scores, int k) {
    if (k < 1) throw UsageError("cluster count must be >= 1, got " + std::to_string(k));
    const std::size_t n = scores.size();
    if (n < static_cast<std::size_t>(k))
        throw DataError("cannot split " + std::to_string(n) + " scores into " + std::to_string(k) +
                        " clusters");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(scores[i]))
            throw DataError("score at position " + std::to_string(i) + " is not finite");

    std::vector<double> sorted(scores);
    std::sort(sorted.begin(), sorted.end());
    std::size_t distinct = n == 0 ? 0 : 1;
    for (std::size_t i = 1; i < n; ++i)
        if (sorted[i] != sorted[i - 1]) ++distinct;
    if (distinct < static_cast<std::size_t>(k))
        throw DataError("cannot split " + std::to_string(distinct) + " distinct values into " +
                        std::to_string(k) + " clusters");

    // Prefix sums; within-class SSE over sorted[a..b] via the moment formula.
    std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s1[i + 1] = s1[i] + sorted[i];
        s2[i + 1] = s2[i] + sorted[i] * sorted[i];
    }
    auto sse = [&](std::size_t a, std::size_t b) {
        const double s = s1[b + 1] - s1[a];
        const double q = s2[b + 1] - s2[a];
        return q - s * s / static_cast<double>(b - a + 1);
    };

    // best[r][i]: minimal cost of splitting sorted[i..n-1] into r classes.
    // Costs are accumulated right-fold (prefix class + best suffix), so exact
    // equality against candidate sums is safe during reconstruction.
    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<std::vector<double>> best(kk + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) best[1][i] = sse(i, n - 1);
    for (std::size_t r = 2; r <= kk; ++r)
        for (std::size_t i = 0; i + r <= n; ++i) {
            double m = std::numeric_limits<double>::infinity();
            for (std::size_t t = i + 1; t + (r - 1) <= n; ++t)
                m = std::min(m, sse(i, t - 1) + best[r - 1][t]);
            best[r][i] = m;
        }

    ClusterModel model;
    model.k = k;
    model.fit_min = sorted.front();
    model.fit_max = sorted.back();
    model.silhouette = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::size_t> starts;  // start index of classes 2..k
    std::size_t pos = 0;
    for (std::size_t r = kk; r >= 2; --r) {
        for (std::size_t t = pos + 1; t + (r - 1) <= n; ++t) {
            if (sse(pos, t - 1) + best[r - 1][t] == best[r][pos]) {
                starts.push_back(t);
                pos = t;
                break;
            }
        }
    }
    if (starts.size() != kk - 1) throw InternalError("jenks reconstruction failed");

    model.counts.reserve(kk);
    std::size_t prev = 0;
    for (std::size_t t : starts) {
        model.counts.push_back(t - prev);
        model.breaks.push_back(sorted[t]);
        prev = t;
    }
    model.counts.push_back(n - prev);
    for (std::size_t i = 1; i < model.breaks.size(); ++i)
        if (!(model.breaks[i - 1] < model.breaks[i]))
            throw DataError("optimal partition cannot separate " + std::to_string(k) +
                            " clusters with strictly increasing boundaries (duplicate values "
                            "straddle a boundary)");
    return model;
}

int assign_cluster(const ClusterModel& model, double score) {
    if (std::isnan(score)) throw DataError("cannot assign a cluster to a NaN score");
    const auto it = std::upper_bound(model.breaks.begin(), model.breaks.end(), score);
    return static_cast<int>(it - model.breaks.begin());
}

double silhouette(const std::vector<double>& scores, const std::vector<int>& labels,
                  std::size_t subsample_threshold, std::uint64_t seed,
                  std::uint64_t* sample_out) {
    if (scores.size() != labels.size())
        throw UsageError("silhouette: scores and labels differ in length");
    if (scores.empty()) throw DataError("silhouette: empty input");

    std::vector<double> xs;
    std::vector<int> ls;
    if (scores.size() > subsample_threshold && subsample_threshold > 0) {
        Rng rng(seed);
        for (std::size_t i : rng.sample_indices(scores.size(), subsample_threshold)) {
            xs.push_back(scores[i]);
            ls.push_back(labels[i]);
        }
    } else {
        xs = scores;
        ls = labels;
    }
    if (sample_out) *sample_out = xs.size();

    std::set<int> present(ls.begin(), ls.end());
    if (present.size() < 2) throw DataError("silhouette requires at least 2 nonempty clusters");

    const std::size_t n = xs.size();
    std::vector<std::uint64_t> sizes;
    std::vector<int> dense(n);  // labels remapped to 0..K-1
    {
        std::vector<int> order(present.begin(), present.end());
        for (std::size_t i = 0; i < n; ++i) {
            dense[i] = static_cast<int>(
                std::lower_bound(order.begin(), order.end(), ls[i]) - order.begin());
        }
        sizes.assign(order.size(), 0);
        for (int d : dense) ++sizes[static_cast<std::size_t>(d)];
    }
    const std::size_t K = sizes.size();

    double total = 0.0;
    std::vector<double> sum_to(K);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(sum_to.begin(), sum_to.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum_to[static_cast<std::size_t>(dense[j])] += std::abs(xs[i] - xs[j]);
        const auto ci = static_cast<std::size_t>(dense[i]);
        if (sizes[ci] <= 1) continue;  // singleton contributes 0
        const double a = sum_to[ci] / static_cast<double>(sizes[ci] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < K; ++c)
            if (c != ci) b = std::min(b, sum_to[c] / static_cast<double>(sizes[c]));
        const double m = std::max(a, b);
        if (m > 0.0) total += (b - a) / m;
    }
    return total / static_cast<double>(n);
}

ClusterModel fit_cluster_model(const std::vector<double>& scores, int k,
                               std::size_t subsample_threshold, std::uint64_t silhouette_seed) {
    ClusterModel model = jenks_breaks(scores, k);
    if (k >= 2) {
        std::vector<int> labels;
        labels.reserve(scores.size());
        for (double s : scores) labels.push_back(assign_cluster(model, s));
        std::uint64_t sample = 0;
        model.silhouette = silhouette(scores, labels, subsample_threshold, silhouette_seed, &sample);
        model.silhouette_sample = sample;
    }
    return model;
}

std::string ClusterModel::to_json() const {
    nlohmann::json j;
    j["format"] = "lalita-cluster-model";
    j["version"] = 1;
    j["k"] = k;
    j["breaks"] = breaks;
    j["counts"] = counts;
    j["fit_min"] = fit_min;
    j["fit_max"] = fit_max;
    if (std::isnan(silhouette))
        j["silhouette"] = nullptr;
    else
        j["silhouette"] = silhouette;
    j["silhouette_sample"] = silhouette_sample;
    return j.dump(2);
}

ClusterModel ClusterModel::from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("format") != "lalita-cluster-model" || j.at("version") != 1)
            throw DataError("unrecognized cluster-model file format or version");
        ClusterModel m;
        m.k = j.at("k").get<int>();
        m.breaks = j.at("breaks").get<std::vector<double>>();
        m.counts = j.at("counts").get<std::vector<std::uint64_t>>();
        m.fit_min = j.at("fit_min").get<double>();
        m.fit_max = j.at("fit_max").get<double>();
        m.silhouette = j.at("silhouette").is_null()
                           ? std::numeric_limits<double>::quiet_NaN()
                           : j.at("silhouette").get<double>();
        m.silhouette_sample = j.at("silhouette_sample").get<std::uint64_t>();
        if (m.k < 1 || m.breaks.size() + 1 != static_cast<std::size_t>(m.k) ||
            m.counts.size() != static_cast<std::size_t>(m.k))
            throw DataError("cluster-model file inconsistent: break/count arity");
        for (std::size_t i = 1; i < m.breaks.size(); ++i)
            if (!(m.breaks[i - 1] < m.breaks[i]))
                throw DataError("cluster-model file inconsistent: breaks not increasing");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid cluster-model JSON: ") + e.what());
    }
}

void ClusterModel::save(const std::string& path) const { write_text_file_atomic(path, to_json()); }

ClusterModel ClusterModel::load(const std::string& path) { return from_json(read_text_file(path)); }

} // namespace lalita
