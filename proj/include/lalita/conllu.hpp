#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lalita/bitext.hpp"

namespace lalita {

// The 17 Universal POS tags, alphabetical.
extern const std::array<std::string, 17> kUposTags;

bool is_valid_upos(const std::string& tag);

// One BIO named-entity tag over {LOC, MISC, ORG, PER}.
struct NerTag {
    bool begin = false; // B-* vs I-*
    std::string category;

    bool operator==(const NerTag&) const = default;
};

// One syntactic word. Ids are positional (1-based within the sentence);
// head refers to those ids, 0 for root.
struct Token {
    std::string form;
    std::string upos;
    int head = 0;
    std::string deprel;
    // Morphological key=value pairs, sorted by key. Values may be
    // comma-separated lists (Case=Acc,Dat).
    std::vector<std::pair<std::string, std::string>> feats;
    std::optional<NerTag> ner;

    bool operator==(const Token&) const = default;
};

// The parse of one bitext source instance. A multi-sentence instance keeps
// all its tokens, renumbered contiguously; block_sizes records the original
// sentence blocks so serialization round-trips.
struct AnnotatedSentence {
    std::string id;
    std::vector<Token> tokens;
    int sentence_count_in_doc = 1;
    std::vector<std::size_t> block_sizes;

    bool operator==(const AnnotatedSentence&) const = default;
};

std::vector<AnnotatedSentence> parse_conllu(std::istream& in);
std::vector<AnnotatedSentence> parse_conllu_string(const std::string& text);
std::vector<AnnotatedSentence> parse_conllu_file(const std::string& path);

// Canonical 10-column layout; LEMMA/XPOS/DEPS emit `_`.
void serialize_conllu(std::ostream& out, const AnnotatedSentence& ann);
std::string serialize_conllu_string(const std::vector<AnnotatedSentence>& anns);

struct JoinResult {
    std::vector<std::pair<BitextPair, AnnotatedSentence>> joined;
    std::vector<std::string> unmatched_pair_ids;
    std::vector<std::string> unmatched_annotation_ids;
};

// Inner join on id, ordered by bitext input order.
JoinResult join_bitext(const std::vector<BitextPair>& pairs,
                       const std::vector<AnnotatedSentence>& annotations);

} // namespace lalita
