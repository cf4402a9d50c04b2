#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lalita/conllu.hpp"

namespace lalita {

// Ordered feature registry: groups in a fixed order, names sorted byte-wise
// within each group. Statistical and Lexical names are fixed; NamedEntity and
// POS are closed inventories; DepRel and UMF are discovered from the corpus.
class FeatureSchema {
public:
    enum Group { Statistical = 0, Lexical, NamedEntity, POS, DepRel, UMF, kGroupCount };
    static constexpr std::array<const char*, kGroupCount> kGroupNames = {
        "Statistical", "Lexical", "NamedEntity", "POS", "DepRel", "UMF"};

    FeatureSchema(std::array<std::vector<std::string>, kGroupCount> groups, bool has_nlm);

    bool has_nlm() const { return has_nlm_; }
    const std::vector<std::string>& group(Group g) const { return groups_[g]; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t dimension() const { return names_.size(); }
    // Index into the flat vector, or nullopt if the name is not in the schema.
    std::optional<std::size_t> index_of(Group g, const std::string& name) const;
    std::optional<std::size_t> index_of(const std::string& name) const;

    std::string to_json() const;
    static FeatureSchema from_json(const std::string& text);
    void save(const std::string& path) const;
    static FeatureSchema load(const std::string& path);
    // FNV-1a of the canonical JSON form; recorded by downstream artifacts.
    std::uint64_t hash() const;

private:
    std::array<std::vector<std::string>, kGroupCount> groups_;
    bool has_nlm_;
    std::vector<std::string> names_;
    std::array<std::size_t, kGroupCount> group_offset_{};
    std::unordered_map<std::string, std::size_t> index_;
};

struct FeatureVector {
    std::string id;
    std::vector<double> values;
};

// Labels present in a sentence but absent from the schema (possible when
// scoring new data against a frozen schema) are skipped and tallied here.
struct VectorizeStats {
    std::uint64_t unseen_deprel = 0;
    std::uint64_t unseen_umf = 0;
};

FeatureSchema build_schema(const std::vector<AnnotatedSentence>& corpus, bool has_nlm);

FeatureVector vectorize(const AnnotatedSentence& ann, const FeatureSchema& schema,
                        double slm_ppl, std::optional<double> nlm_ppl,
                        VectorizeStats* stats = nullptr);

// Feature names for one UMF key=value pair; multi-valued entries like
// Case=Acc,Dat yield one name per listed value.
std::vector<std::string> umf_feature_names(const std::string& key, const std::string& value);

// Headerless TSV: id<TAB>v1<TAB>...<TAB>vD. Values round-trip exactly.
void write_vectors_tsv(const std::string& path, const std::vector<FeatureVector>& vectors);
std::vector<FeatureVector> read_vectors_tsv(const std::string& path, std::size_t expect_dim);

// Columnar binary cache: magic, row/column counts, ids, then one contiguous
// double array per feature column.
void write_vectors_binary(const std::string& path, const std::vector<FeatureVector>& vectors,
                          std::size_t dim);
std::vector<FeatureVector> read_vectors_binary(const std::string& path, std::size_t expect_dim);

} // namespace lalita
