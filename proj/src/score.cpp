#include "lalita/score.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"

namespace lalita {

namespace {

// Deterministic sign convention for an eigenvector: the entry of largest
// magnitude (first such index on ties) is made positive.
void orient_row(Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (v(best) < 0.0) v = -v;
}

} // namespace

ScoreModel fit_score_model(const std::vector<FeatureVector>& vectors, const FeatureSchema& schema,
                           int k) {
    if (k < 1) throw UsageError("number of components must be >= 1, got " + std::to_string(k));
    const std::size_t n = vectors.size();
    const std::size_t dim = schema.dimension();
    if (n < 2) throw DataError("score fitting needs at least 2 vectors, got " + std::to_string(n));
    for (const auto& fv : vectors)
        if (fv.values.size() != dim)
            throw DataError("vector '" + fv.id + "' has dimension " +
                            std::to_string(fv.values.size()) + ", schema expects " +
                            std::to_string(dim));

    bool any_distinct = false;
    for (std::size_t i = 1; i < n && !any_distinct; ++i)
        any_distinct = vectors[i].values != vectors[0].values;
    if (!any_distinct) throw DataError("score fitting needs at least 2 distinct vectors");

    ScoreModel m;
    m.schema_hash = schema.hash();
    m.feature_names = schema.names();
    m.mean.assign(dim, 0.0);
    m.stddev.assign(dim, 0.0);
    for (const auto& fv : vectors)
        for (std::size_t j = 0; j < dim; ++j) m.mean[j] += fv.values[j];
    for (std::size_t j = 0; j < dim; ++j) m.mean[j] /= static_cast<double>(n);
    for (const auto& fv : vectors)
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = fv.values[j] - m.mean[j];
            m.stddev[j] += d * d;
        }
    for (std::size_t j = 0; j < dim; ++j)
        m.stddev[j] = std::sqrt(m.stddev[j] / static_cast<double>(n));

    for (std::size_t j = 0; j < dim; ++j) {
        if (m.stddev[j] > 0.0)
            m.kept.push_back(j);
        else
            m.dropped.push_back(m.feature_names[j]);
    }
    const std::size_t d = m.kept.size();

    // Standardize, then L2-normalize each row (zero rows stay zero).
    Eigen::MatrixXd x(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jj = 0; jj < d; ++jj) {
            const std::size_t j = m.kept[jj];
            x(i, jj) = (vectors[i].values[j] - m.mean[j]) / m.stddev[j];
        }
        const double norm = x.row(i).norm();
        if (norm > 0.0) x.row(i) /= norm;
    }

    Eigen::RowVectorXd center = x.colwise().mean();
    m.center.assign(center.data(), center.data() + d);
    Eigen::MatrixXd centered = x.rowwise() - center;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw InternalError("eigendecomposition failed");

    std::size_t k_eff = static_cast<std::size_t>(k);
    if (k_eff > d) {
        std::cerr << "warning: requested " << k << " components but only " << d
                  << " features survive; clamping\n";
        k_eff = d;
    }

    double total_var = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        total_var += std::max(0.0, es.eigenvalues()(i));

    for (std::size_t c = 0; c < k_eff; ++c) {
        Eigen::VectorXd row = es.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - c));
        orient_row(row);
        m.components.emplace_back(row.data(), row.data() + d);
        const double ev = std::max(0.0, es.eigenvalues()(static_cast<Eigen::Index>(d - 1 - c)));
        m.explained_variance_ratio.push_back(total_var > 0.0 ? ev / total_var : 0.0);
    }

    // Anchor the first component's sign on sentenceLength when it survived.
    if (auto sl = schema.index_of("sentenceLength")) {
        auto pos = std::lower_bound(m.kept.begin(), m.kept.end(), *sl);
        if (pos != m.kept.end() && *pos == *sl) {
            const std::size_t jj = static_cast<std::size_t>(pos - m.kept.begin());
            if (m.components[0][jj] < 0.0) {
                for (auto& v : m.components[0]) v = -v;
                m.pc1_sign_flipped = true;
            }
        }
    }
    return m;
}

ScoredSentence score(const ScoreModel& model, const FeatureVector& v) {
    if (v.values.size() != model.dimension())
        throw DataError("vector '" + v.id + "' has dimension " + std::to_string(v.values.size()) +
                        ", model expects " + std::to_string(model.dimension()));
    const std::size_t d = model.kept.size();
    std::vector<double> row(d);
    double norm_sq = 0.0;
    for (std::size_t jj = 0; jj < d; ++jj) {
        const std::size_t j = model.kept[jj];
        row[jj] = (v.values[j] - model.mean[j]) / model.stddev[j];
        norm_sq += row[jj] * row[jj];
    }
    const double norm = std::sqrt(norm_sq);
    for (std::size_t jj = 0; jj < d; ++jj) {
        if (norm > 0.0) row[jj] /= norm;
        row[jj] -= model.center[jj];
    }
    ScoredSentence out;
    out.id = v.id;
    for (std::size_t c = 0; c < model.components.size(); ++c) {
        double dot = 0.0;
        for (std::size_t jj = 0; jj < d; ++jj) dot += model.components[c][jj] * row[jj];
        if (c == 0)
            out.lalita = dot;
        else
            out.extra.push_back(dot);
    }
    return out;
}

std::vector<std::pair<std::string, double>> export_loadings(const ScoreModel& model) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(model.dimension());
    std::vector<double> mags(model.dimension(), 0.0);
    for (std::size_t jj = 0; jj < model.kept.size(); ++jj)
        mags[model.kept[jj]] = std::abs(model.components.at(0)[jj]);
    for (std::size_t j = 0; j < model.dimension(); ++j)
        out.emplace_back(model.feature_names[j], mags[j]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::string ScoreModel::to_json() const {
    nlohmann::json j;
    j["format"] = "lalita-score-model";
    j["version"] = 1;
    j["schema_hash"] = schema_hash;
    j["feature_names"] = feature_names;
    j["mean"] = mean;
    j["stddev"] = stddev;
    j["kept"] = kept;
    j["dropped"] = dropped;
    j["center"] = center;
    j["components"] = components;
    j["explained_variance_ratio"] = explained_variance_ratio;
    j["pc1_sign_flipped"] = pc1_sign_flipped;
    return j.dump(2);
}

ScoreModel ScoreModel::from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("format") != "lalita-score-model" || j.at("version") != 1)
            throw DataError("unrecognized score-model file format or version");
        ScoreModel m;
        m.schema_hash = j.at("schema_hash").get<std::uint64_t>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.mean = j.at("mean").get<std::vector<double>>();
        m.stddev = j.at("stddev").get<std::vector<double>>();
        m.kept = j.at("kept").get<std::vector<std::size_t>>();
        m.dropped = j.at("dropped").get<std::vector<std::string>>();
        m.center = j.at("center").get<std::vector<double>>();
        m.components = j.at("components").get<std::vector<std::vector<double>>>();
        m.explained_variance_ratio = j.at("explained_variance_ratio").get<std::vector<double>>();
        m.pc1_sign_flipped = j.at("pc1_sign_flipped").get<bool>();
        const std::size_t dim = m.feature_names.size();
        if (m.mean.size() != dim || m.stddev.size() != dim)
            throw DataError("score-model file inconsistent: mean/stddev arity");
        if (m.kept.size() + m.dropped.size() != dim || m.center.size() != m.kept.size())
            throw DataError("score-model file inconsistent: kept/dropped/center arity");
        for (std::size_t idx : m.kept)
            if (idx >= dim) throw DataError("score-model file inconsistent: kept index range");
        if (m.components.empty() || m.explained_variance_ratio.size() != m.components.size())
            throw DataError("score-model file inconsistent: components arity");
        for (const auto& row : m.components)
            if (row.size() != m.kept.size())
                throw DataError("score-model file inconsistent: component row arity");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid score-model JSON: ") + e.what());
    }
}

void ScoreModel::save(const std::string& path) const { write_text_file_atomic(path, to_json()); }

ScoreModel ScoreModel::load(const std::string& path) { return from_json(read_text_file(path)); }

void write_scores_tsv(const std::string& path, const std::vector<ScoredSentence>& scores) {
    std::string out;
    for (const auto& s : scores) {
        out += s.id;
        out += '\t';
        out += format_double(s.lalita);
        for (double e : s.extra) {
            out += '\t';
            out += format_double(e);
        }
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

std::vector<ScoredSentence> read_scores_tsv(const std::string& path) {
    std::vector<ScoredSentence> out;
    std::size_t lineno = 0;
    for (const auto& line : read_lines(path)) {
        ++lineno;
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() < 2)
            throw DataError(path + ":" + std::to_string(lineno) + ": score row needs id and value");
        ScoredSentence s;
        s.id = cols[0];
        s.lalita = parse_double(cols[1], path + ":" + std::to_string(lineno));
        for (std::size_t i = 2; i < cols.size(); ++i)
            s.extra.push_back(parse_double(cols[i], path + ":" + std::to_string(lineno)));
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace lalita
