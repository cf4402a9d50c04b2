#include "lalita/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include <nlohmann/json.hpp>

#include "lalita/errors.hpp"
#include "lalita/hash.hpp"
#include "lalita/io_util.hpp"

namespace lalita {

FeatureSchema::FeatureSchema(std::array<std::vector<std::string>, kGroupCount> groups, bool has_nlm)
    : groups_(std::move(groups)), has_nlm_(has_nlm) {
    std::size_t offset = 0;
    for (int g = 0; g < kGroupCount; ++g) {
        auto& names = groups_[g];
        std::sort(names.begin(), names.end());
        group_offset_[g] = offset;
        for (const auto& n : names) {
            if (n.empty()) throw DataError("feature schema contains an empty feature name");
            if (!index_.emplace(n, offset).second)
                throw DataError("duplicate feature name in schema: '" + n + "'");
            names_.push_back(n);
            ++offset;
        }
    }
}

std::optional<std::size_t> FeatureSchema::index_of(Group g, const std::string& name) const {
    const auto& names = groups_[g];
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it == names.end() || *it != name) return std::nullopt;
    return group_offset_[g] + static_cast<std::size_t>(it - names.begin());
}

std::optional<std::size_t> FeatureSchema::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string FeatureSchema::to_json() const {
    nlohmann::json j;
    j["format"] = "lalita-feature-schema";
    j["version"] = 1;
    j["has_nlm"] = has_nlm_;
    j["dimension"] = dimension();
    j["group_order"] = std::vector<std::string>(kGroupNames.begin(), kGroupNames.end());
    nlohmann::json groups = nlohmann::json::object();
    for (int g = 0; g < kGroupCount; ++g) groups[kGroupNames[g]] = groups_[g];
    j["groups"] = groups;
    return j.dump(2);
}

FeatureSchema FeatureSchema::from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("format") != "lalita-feature-schema" || j.at("version") != 1)
            throw DataError("unrecognized feature-schema file format or version");
        std::array<std::vector<std::string>, kGroupCount> groups;
        for (int g = 0; g < kGroupCount; ++g)
            groups[g] = j.at("groups").at(kGroupNames[g]).get<std::vector<std::string>>();
        FeatureSchema schema(std::move(groups), j.at("has_nlm").get<bool>());
        if (j.at("dimension").get<std::size_t>() != schema.dimension())
            throw DataError("feature-schema file inconsistent: stored dimension does not match names");
        return schema;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid feature-schema JSON: ") + e.what());
    }
}

void FeatureSchema::save(const std::string& path) const {
    write_text_file_atomic(path, to_json());
}

FeatureSchema FeatureSchema::load(const std::string& path) {
    return from_json(read_text_file(path));
}

std::uint64_t FeatureSchema::hash() const { return fnv1a(to_json()); }

std::vector<std::string> umf_feature_names(const std::string& key, const std::string& value) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        std::size_t comma = value.find(',', pos);
        if (comma == std::string::npos) comma = value.size();
        if (comma > pos) out.push_back(key + "_" + value.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

FeatureSchema build_schema(const std::vector<AnnotatedSentence>& corpus, bool has_nlm) {
    if (corpus.empty()) throw UsageError("schema construction requires a nonempty corpus");
    std::set<std::string> deprels;
    std::set<std::string> umfs = {"NoUMF"};
    for (const auto& ann : corpus) {
        for (const auto& t : ann.tokens) {
            deprels.insert(t.deprel);
            for (const auto& [k, v] : t.feats)
                for (auto& name : umf_feature_names(k, v)) umfs.insert(std::move(name));
        }
    }
    std::array<std::vector<std::string>, FeatureSchema::kGroupCount> groups;
    groups[FeatureSchema::Statistical] =
        has_nlm ? std::vector<std::string>{"nlm_ppl", "slm_ppl"} : std::vector<std::string>{"slm_ppl"};
    groups[FeatureSchema::Lexical] = {"sentenceLength"};
    groups[FeatureSchema::NamedEntity] = {"LOC", "MISC", "ORG", "PER"};
    groups[FeatureSchema::POS].assign(kUposTags.begin(), kUposTags.end());
    groups[FeatureSchema::DepRel].assign(deprels.begin(), deprels.end());
    groups[FeatureSchema::UMF].assign(umfs.begin(), umfs.end());
    return FeatureSchema(std::move(groups), has_nlm);
}

FeatureVector vectorize(const AnnotatedSentence& ann, const FeatureSchema& schema,
                        double slm_ppl, std::optional<double> nlm_ppl, VectorizeStats* stats) {
    FeatureVector fv;
    fv.id = ann.id;
    fv.values.assign(schema.dimension(), 0.0);

    if (schema.has_nlm() && !nlm_ppl)
        throw DataError("sentence '" + ann.id + "': schema expects an nlm_ppl value but none was supplied");
    if (!schema.has_nlm() && nlm_ppl)
        throw DataError("sentence '" + ann.id + "': nlm_ppl supplied but the schema has no such feature");

    fv.values[*schema.index_of(FeatureSchema::Statistical, "slm_ppl")] = slm_ppl;
    if (schema.has_nlm())
        fv.values[*schema.index_of(FeatureSchema::Statistical, "nlm_ppl")] = *nlm_ppl;
    fv.values[*schema.index_of(FeatureSchema::Lexical, "sentenceLength")] =
        static_cast<double>(ann.tokens.size());

    const std::size_t noumf = *schema.index_of(FeatureSchema::UMF, "NoUMF");
    std::optional<std::string> prev_ner;
    for (const auto& t : ann.tokens) {
        // An entity is a maximal run: B-X starts one; I-X continues only when
        // the previous token carried the same category, otherwise it starts one.
        if (t.ner) {
            if (t.ner->begin || prev_ner != t.ner->category)
                ++fv.values[*schema.index_of(FeatureSchema::NamedEntity, t.ner->category)];
            prev_ner = t.ner->category;
        } else {
            prev_ner.reset();
        }

        ++fv.values[*schema.index_of(FeatureSchema::POS, t.upos)];

        if (auto idx = schema.index_of(FeatureSchema::DepRel, t.deprel))
            ++fv.values[*idx];
        else if (stats)
            ++stats->unseen_deprel;

        if (t.feats.empty()) {
            ++fv.values[noumf];
        } else {
            for (const auto& [k, v] : t.feats) {
                for (const auto& name : umf_feature_names(k, v)) {
                    if (auto idx = schema.index_of(FeatureSchema::UMF, name))
                        ++fv.values[*idx];
                    else if (stats)
                        ++stats->unseen_umf;
                }
            }
        }
    }
    return fv;
}

void write_vectors_tsv(const std::string& path, const std::vector<FeatureVector>& vectors) {
    std::string out;
    for (const auto& fv : vectors) {
        out += fv.id;
        for (double v : fv.values) {
            out += '\t';
            out += format_double(v);
        }
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

std::vector<FeatureVector> read_vectors_tsv(const std::string& path, std::size_t expect_dim) {
    std::vector<FeatureVector> out;
    std::size_t lineno = 0;
    for (const auto& line : read_lines(path)) {
        ++lineno;
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() < 2)
            throw DataError(path + ":" + std::to_string(lineno) + ": vector row needs id and values");
        FeatureVector fv;
        fv.id = cols[0];
        fv.values.reserve(cols.size() - 1);
        for (std::size_t i = 1; i < cols.size(); ++i) fv.values.push_back(parse_double(
            cols[i], path + ":" + std::to_string(lineno)));
        if (expect_dim == 0) expect_dim = fv.values.size();
        if (fv.values.size() != expect_dim)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(expect_dim) + " values, found " +
                            std::to_string(fv.values.size()));
        out.push_back(std::move(fv));
    }
    return out;
}

namespace {

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& buf, std::size_t& pos) {
    if (pos + 8 > buf.size()) throw DataError("truncated binary vector cache");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
    pos += 8;
    return v;
}

constexpr char kVecMagic[8] = {'L', 'A', 'L', 'V', 'E', 'C', '0', '1'};

} // namespace

void write_vectors_binary(const std::string& path, const std::vector<FeatureVector>& vectors,
                          std::size_t dim) {
    std::string buf(kVecMagic, sizeof(kVecMagic));
    put_u64(buf, vectors.size());
    put_u64(buf, dim);
    for (const auto& fv : vectors) {
        if (fv.values.size() != dim)
            throw DataError("vector '" + fv.id + "' has dimension " +
                            std::to_string(fv.values.size()) + ", cache expects " + std::to_string(dim));
        put_u64(buf, fv.id.size());
        buf += fv.id;
    }
    for (std::size_t c = 0; c < dim; ++c)
        for (const auto& fv : vectors) {
            std::uint64_t bits;
            std::memcpy(&bits, &fv.values[c], 8);
            put_u64(buf, bits);
        }
    write_text_file_atomic(path, buf);
}

std::vector<FeatureVector> read_vectors_binary(const std::string& path, std::size_t expect_dim) {
    const std::string buf = read_text_file(path);
    if (buf.size() < sizeof(kVecMagic) || std::memcmp(buf.data(), kVecMagic, sizeof(kVecMagic)) != 0)
        throw DataError(path + ": not a vector cache file");
    std::size_t pos = sizeof(kVecMagic);
    const std::uint64_t rows = get_u64(buf, pos);
    const std::uint64_t dim = get_u64(buf, pos);
    if (expect_dim != 0 && dim != expect_dim)
        throw DataError(path + ": cache dimension " + std::to_string(dim) + " does not match schema " +
                        std::to_string(expect_dim));
    std::vector<FeatureVector> out(rows);
    for (auto& fv : out) {
        const std::uint64_t len = get_u64(buf, pos);
        if (pos + len > buf.size()) throw DataError("truncated binary vector cache");
        fv.id.assign(buf, pos, len);
        pos += len;
        fv.values.assign(dim, 0.0);
    }
    for (std::uint64_t c = 0; c < dim; ++c)
        for (auto& fv : out) {
            const std::uint64_t bits = get_u64(buf, pos);
            std::memcpy(&fv.values[c], &bits, 8);
        }
    if (pos != buf.size()) throw DataError(path + ": trailing bytes in vector cache");
    return out;
}

} // namespace lalita
