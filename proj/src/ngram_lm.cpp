#include "lalita/ngram_lm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "lalita/bitext.hpp"
#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"
#include "lalita/unicode.hpp"

namespace lalita {

namespace {

void append_id(std::string& key, std::uint32_t id) {
    key.push_back(static_cast<char>(id & 0xff));
    key.push_back(static_cast<char>((id >> 8) & 0xff));
    key.push_back(static_cast<char>((id >> 16) & 0xff));
    key.push_back(static_cast<char>((id >> 24) & 0xff));
}

std::string pack_range(const std::uint32_t* ids, std::size_t len) {
    std::string key;
    key.reserve(len * 4);
    for (std::size_t i = 0; i < len; ++i) append_id(key, ids[i]);
    return key;
}

std::string pack1(std::uint32_t id) {
    std::string key;
    append_id(key, id);
    return key;
}

std::uint32_t id_at(const std::string& key, std::size_t i) {
    const auto* p = reinterpret_cast<const unsigned char*>(key.data()) + 4 * i;
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

std::vector<std::string> normalize_for_lm(const AnnotatedSentence& ann) {
    std::vector<std::string> out;
    out.reserve(ann.tokens.size());
    for (const auto& t : ann.tokens) out.push_back(unicode::compose_nfc(unicode::lowercase(t.form)));
    return out;
}

std::vector<std::string> normalize_text_for_lm(const std::string& line) {
    return whitespace_tokens(unicode::compose_nfc(unicode::lowercase(line)));
}

NgramModel train_kn(const std::vector<std::vector<std::string>>& corpus, int order) {
    if (order < 1) throw UsageError("LM order must be >= 1, got " + std::to_string(order));
    if (corpus.empty()) throw UsageError("LM training corpus is empty");

    NgramModel m;
    m.order_ = order;
    m.train_sentences_ = corpus.size();

    std::set<std::string> vocab_set = {NgramModel::kBos, NgramModel::kEos, NgramModel::kUnk};
    for (const auto& sent : corpus) {
        m.train_tokens_ += sent.size();
        for (const auto& t : sent) vocab_set.insert(t);
    }
    m.vocab_.assign(vocab_set.begin(), vocab_set.end());
    for (std::uint32_t i = 0; i < m.vocab_.size(); ++i) m.word_ids_[m.vocab_[i]] = i;
    m.bos_ = m.word_ids_.at(NgramModel::kBos);
    m.eos_ = m.word_ids_.at(NgramModel::kEos);
    m.unk_ = m.word_ids_.at(NgramModel::kUnk);

    // Raw counts per order, counting only windows that end at a predictable
    // position (never at a <s> pad). raw[j] holds order j+1.
    const std::size_t n = static_cast<std::size_t>(order);
    std::vector<std::unordered_map<std::string, std::uint64_t>> raw(n);
    for (const auto& sent : corpus) {
        std::vector<std::uint32_t> ids;
        ids.reserve(sent.size() + n);
        for (std::size_t i = 0; i + 1 < n; ++i) ids.push_back(m.bos_);
        for (const auto& t : sent) {
            // Literal reserved symbols in running text are treated as <unk>.
            if (t == NgramModel::kBos || t == NgramModel::kEos)
                ids.push_back(m.unk_);
            else
                ids.push_back(m.word_ids_.at(t));
        }
        ids.push_back(m.eos_);
        for (std::size_t i = n - 1; i < ids.size(); ++i)
            for (std::size_t k = 1; k <= n; ++k)
                ++raw[k - 1][pack_range(&ids[i - k + 1], k)];
    }

    // Adjusted counts: top order keeps raw counts; below it, the count of a
    // gram is the number of distinct words seen immediately before it
    // (continuation count), except grams starting with <s> keep raw counts.
    m.counts_.resize(n);
    m.counts_[n - 1] = std::move(raw[n - 1]);
    for (std::size_t k = n - 1; k >= 1; --k) {
        const auto& upper = (k == n - 1) ? m.counts_[n - 1] : raw[k];
        std::unordered_map<std::string, std::uint64_t> cont;
        cont.reserve(upper.size());
        for (const auto& [g, c] : upper) {
            (void)c;
            ++cont[g.substr(4)];
        }
        auto& adj = m.counts_[k - 1];
        adj.reserve(raw[k - 1].size());
        for (const auto& [g, c] : raw[k - 1]) {
            if (id_at(g, 0) == m.bos_) {
                adj[g] = c;
            } else {
                auto it = cont.find(g);
                if (it != cont.end() && it->second > 0) adj[g] = it->second;
            }
        }
    }

    m.rebuild_derived();
    return m;
}

void NgramModel::rebuild_derived() {
    const std::size_t n = static_cast<std::size_t>(order_);
    ctx_.assign(n, {});
    for (std::size_t k = 1; k <= n; ++k) {
        auto& cmap = ctx_[k - 1];
        for (const auto& [g, c] : counts_[k - 1]) {
            auto& st = cmap[g.substr(0, g.size() - 4)];
            st.total += static_cast<double>(c);
            if (c == 1)
                ++st.n1;
            else if (c == 2)
                ++st.n2;
            else
                ++st.n3p;
        }
    }

    discounts_.assign(n, {0.75, 0.75, 0.75});
    fallback_.assign(n, true);
    for (std::size_t k = 1; k <= n; ++k) {
        std::uint64_t cc[5] = {0, 0, 0, 0, 0};
        for (const auto& [g, c] : counts_[k - 1]) {
            (void)g;
            if (c <= 4) ++cc[c];
        }
        if (cc[1] == 0 || cc[2] == 0 || cc[3] == 0) continue;
        const double y = static_cast<double>(cc[1]) / (cc[1] + 2.0 * cc[2]);
        const double d1 = 1.0 - 2.0 * y * cc[2] / cc[1];
        const double d2 = 2.0 - 3.0 * y * cc[3] / cc[2];
        const double d3 = 3.0 - 4.0 * y * cc[4] / cc[3];
        if (d1 > 0.0 && d1 <= 1.0 && d2 > 0.0 && d2 <= 2.0 && d3 > 0.0 && d3 <= 3.0) {
            discounts_[k - 1] = {d1, d2, d3};
            fallback_[k - 1] = false;
        }
    }

    // Predictable vocabulary: every word with a unigram count, plus <unk>.
    predict_vocab_ = counts_[0].size() + (counts_[0].count(pack1(unk_)) ? 0 : 1);
}

std::uint32_t NgramModel::id_or_unk(const std::string& word) const {
    auto it = word_ids_.find(word);
    return it == word_ids_.end() ? unk_ : it->second;
}

double NgramModel::prob_id(const std::uint32_t* ctx, std::size_t ctx_len, std::uint32_t w) const {
    if (ctx_len == 0) {
        auto it = ctx_[0].find(std::string());
        if (it == ctx_[0].end()) return 1.0 / static_cast<double>(predict_vocab_);
        const CtxStats& st = it->second;
        auto itc = counts_[0].find(pack1(w));
        const std::uint64_t c = itc == counts_[0].end() ? 0 : itc->second;
        const auto& d = discounts_[0];
        const double disc = c == 0 ? 0.0 : (c == 1 ? d[0] : (c == 2 ? d[1] : d[2]));
        const double gamma = (d[0] * st.n1 + d[1] * st.n2 + d[2] * st.n3p) / st.total;
        return (static_cast<double>(c) - disc) / st.total +
               gamma / static_cast<double>(predict_vocab_);
    }
    const std::size_t k = ctx_len + 1;
    std::string h = pack_range(ctx, ctx_len);
    auto it = ctx_[k - 1].find(h);
    if (it == ctx_[k - 1].end()) return prob_id(ctx + 1, ctx_len - 1, w);
    const CtxStats& st = it->second;
    append_id(h, w);
    auto itc = counts_[k - 1].find(h);
    const std::uint64_t c = itc == counts_[k - 1].end() ? 0 : itc->second;
    const auto& d = discounts_[k - 1];
    const double disc = c == 0 ? 0.0 : (c == 1 ? d[0] : (c == 2 ? d[1] : d[2]));
    const double gamma = (d[0] * st.n1 + d[1] * st.n2 + d[2] * st.n3p) / st.total;
    return (static_cast<double>(c) - disc) / st.total + gamma * prob_id(ctx + 1, ctx_len - 1, w);
}

double NgramModel::log_prob(const std::vector<std::string>& context, const std::string& word) const {
    std::vector<std::uint32_t> ctx;
    const std::size_t take = std::min<std::size_t>(context.size(), order_ > 0 ? order_ - 1 : 0);
    ctx.reserve(take);
    for (std::size_t i = context.size() - take; i < context.size(); ++i)
        ctx.push_back(id_or_unk(context[i]));
    const std::uint32_t w = word == kBos ? unk_ : id_or_unk(word);
    return std::log(prob_id(ctx.data(), ctx.size(), w));
}

double NgramModel::sentence_log_prob(const std::vector<std::string>& tokens, std::size_t* n_out) const {
    const std::size_t n = static_cast<std::size_t>(order_);
    std::vector<std::uint32_t> seq;
    seq.reserve(tokens.size() + n);
    for (std::size_t i = 0; i + 1 < n; ++i) seq.push_back(bos_);
    for (const auto& t : tokens)
        seq.push_back(t == kBos || t == kEos ? unk_ : id_or_unk(t));
    seq.push_back(eos_);
    double sum = 0.0;
    for (std::size_t i = n - 1; i < seq.size(); ++i)
        sum += std::log(prob_id(&seq[i - (n - 1)], n - 1, seq[i]));
    if (n_out) *n_out = tokens.size() + 1;
    return sum;
}

double NgramModel::perplexity(const std::vector<std::string>& tokens) const {
    if (tokens.empty()) throw DataError("cannot compute perplexity of an empty sentence");
    std::size_t n = 0;
    const double lp = sentence_log_prob(tokens, &n);
    return std::exp(-lp / static_cast<double>(n));
}

std::string NgramModel::to_json() const {
    nlohmann::json j;
    j["format"] = "lalita-ngram-lm";
    j["version"] = 1;
    j["order"] = order_;
    j["vocab"] = vocab_;
    j["discounts"] = discounts_;
    j["discount_fallback"] = fallback_;
    j["predict_vocab_size"] = predict_vocab_;
    j["train_sentences"] = train_sentences_;
    j["train_tokens"] = train_tokens_;
    nlohmann::json orders = nlohmann::json::array();
    for (std::size_t k = 1; k <= static_cast<std::size_t>(order_); ++k) {
        std::vector<std::vector<std::uint64_t>> rows;
        rows.reserve(counts_[k - 1].size());
        for (const auto& [g, c] : counts_[k - 1]) {
            std::vector<std::uint64_t> row;
            row.reserve(k + 1);
            for (std::size_t i = 0; i < k; ++i) row.push_back(id_at(g, i));
            row.push_back(c);
            rows.push_back(std::move(row));
        }
        std::sort(rows.begin(), rows.end());
        orders.push_back(rows);
    }
    j["counts"] = orders;
    return j.dump();
}

NgramModel NgramModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid LM JSON: ") + e.what());
    }
    try {
        if (j.at("format") != "lalita-ngram-lm" || j.at("version") != 1)
            throw DataError("unrecognized LM file format or version");
        NgramModel m;
        m.order_ = j.at("order").get<int>();
        if (m.order_ < 1) throw DataError("LM order in file must be >= 1");
        m.vocab_ = j.at("vocab").get<std::vector<std::string>>();
        if (!std::is_sorted(m.vocab_.begin(), m.vocab_.end()) ||
            std::adjacent_find(m.vocab_.begin(), m.vocab_.end()) != m.vocab_.end())
            throw DataError("LM vocab must be sorted and unique");
        for (std::uint32_t i = 0; i < m.vocab_.size(); ++i) m.word_ids_[m.vocab_[i]] = i;
        auto need = [&](const char* w) {
            auto it = m.word_ids_.find(w);
            if (it == m.word_ids_.end())
                throw DataError(std::string("LM vocab missing reserved symbol ") + w);
            return it->second;
        };
        m.bos_ = need(kBos);
        m.eos_ = need(kEos);
        m.unk_ = need(kUnk);
        m.train_sentences_ = j.at("train_sentences").get<std::uint64_t>();
        m.train_tokens_ = j.at("train_tokens").get<std::uint64_t>();
        const auto& orders = j.at("counts");
        if (!orders.is_array() || orders.size() != static_cast<std::size_t>(m.order_))
            throw DataError("LM counts must hold one table per order");
        m.counts_.resize(m.order_);
        for (std::size_t k = 1; k <= static_cast<std::size_t>(m.order_); ++k) {
            for (const auto& row : orders[k - 1]) {
                if (!row.is_array() || row.size() != k + 1)
                    throw DataError("LM count row has wrong arity at order " + std::to_string(k));
                std::string g;
                for (std::size_t i = 0; i < k; ++i) {
                    const auto id = row[i].get<std::uint64_t>();
                    if (id >= m.vocab_.size())
                        throw DataError("LM count row references unknown word id");
                    append_id(g, static_cast<std::uint32_t>(id));
                }
                const auto c = row[k].get<std::uint64_t>();
                if (c == 0) throw DataError("LM count row with zero count");
                if (!m.counts_[k - 1].emplace(std::move(g), c).second)
                    throw DataError("duplicate LM count row at order " + std::to_string(k));
            }
        }
        m.rebuild_derived();
        if (j.at("predict_vocab_size").get<std::size_t>() != m.predict_vocab_)
            throw DataError("LM file inconsistent: stored predictable-vocab size does not match counts");
        const auto stored_d = j.at("discounts").get<std::vector<std::array<double, 3>>>();
        const auto stored_f = j.at("discount_fallback").get<std::vector<bool>>();
        if (stored_d.size() != m.discounts_.size() || stored_f.size() != m.fallback_.size())
            throw DataError("LM file inconsistent: discount metadata arity");
        for (std::size_t k = 0; k < stored_d.size(); ++k) {
            if (stored_f[k] != m.fallback_[k])
                throw DataError("LM file inconsistent: discount fallback flags");
            for (int i = 0; i < 3; ++i)
                if (std::abs(stored_d[k][i] - m.discounts_[k][i]) > 1e-9)
                    throw DataError("LM file inconsistent: stored discounts do not match counts");
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid LM JSON: ") + e.what());
    }
}

void NgramModel::save(const std::string& path) const {
    write_text_file_atomic(path, to_json());
}

NgramModel NgramModel::load(const std::string& path) {
    return from_json(read_text_file(path));
}

} // namespace lalita
