#include "lalita/conllu.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"

namespace lalita {

const std::array<std::string, 17> kUposTags = {
    "ADJ", "ADP", "ADV",  "AUX",   "CCONJ", "DET",   "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM",   "VERB", "X"};

bool is_valid_upos(const std::string& tag) {
    return std::find(kUposTags.begin(), kUposTags.end(), tag) != kUposTags.end();
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& id, const std::string& what) {
    throw DataError("conllu line " + std::to_string(line_no) +
                    (id.empty() ? "" : " (sent_id " + id + ")") + ": " + what);
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// `x-y` multiword ranges and `x.y` empty nodes are skipped, not counted.
bool is_skippable_id(const std::string& s) {
    auto dash = s.find('-');
    if (dash != std::string::npos) {
        return is_integer(s.substr(0, dash)) && is_integer(s.substr(dash + 1));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        return is_integer(s.substr(0, dot)) && is_integer(s.substr(dot + 1));
    }
    return false;
}

std::vector<std::pair<std::string, std::string>> parse_feats(const std::string& field,
                                                             std::size_t line_no,
                                                             const std::string& id) {
    std::vector<std::pair<std::string, std::string>> out;
    if (field == "_" || field.empty()) return out;
    std::size_t pos = 0;
    while (pos <= field.size()) {
        std::size_t bar = field.find('|', pos);
        if (bar == std::string::npos) bar = field.size();
        std::string entry = field.substr(pos, bar - pos);
        pos = bar + 1;
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
            fail(line_no, id, "malformed FEATS entry '" + entry + "'");
        }
        out.emplace_back(entry.substr(0, eq), entry.substr(eq + 1));
        if (pos > field.size()) break;
    }
    std::sort(out.begin(), out.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].first == out[i - 1].first) {
            fail(line_no, id, "duplicate FEATS key '" + out[i].first + "'");
        }
    }
    return out;
}

std::optional<NerTag> parse_ner(const std::string& misc, std::size_t line_no,
                                const std::string& id) {
    if (misc == "_" || misc.empty()) return std::nullopt;
    std::size_t pos = 0;
    while (pos <= misc.size()) {
        std::size_t bar = misc.find('|', pos);
        if (bar == std::string::npos) bar = misc.size();
        std::string entry = misc.substr(pos, bar - pos);
        pos = bar + 1;
        if (entry.rfind("NER=", 0) == 0) {
            std::string tag = entry.substr(4);
            if (tag == "O") return std::nullopt;
            if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
                fail(line_no, id, "malformed NER tag '" + tag + "'");
            }
            NerTag ner;
            ner.begin = tag[0] == 'B';
            ner.category = tag.substr(2);
            static const std::set<std::string> cats = {"LOC", "MISC", "ORG", "PER"};
            if (!cats.count(ner.category)) {
                fail(line_no, id, "unknown NER category '" + ner.category + "'");
            }
            return ner;
        }
        if (pos > misc.size()) break;
    }
    return std::nullopt;
}

struct Block {
    std::string id;
    std::vector<Token> tokens;
};

} // namespace

std::vector<AnnotatedSentence> parse_conllu(std::istream& in) {
    std::vector<Block> blocks;
    Block cur;
    bool cur_has_content = false;
    std::string line;
    std::size_t line_no = 0;
    int expected_id = 1;

    auto flush_block = [&]() {
        if (!cur_has_content) return;
        if (cur.id.empty()) fail(line_no, "", "sentence block has no '# sent_id =' comment");
        if (cur.tokens.empty()) fail(line_no, cur.id, "sentence block has no token lines");
        // validate heads against block-local ids
        int n = static_cast<int>(cur.tokens.size());
        for (int i = 0; i < n; ++i) {
            if (cur.tokens[i].head < 0 || cur.tokens[i].head > n) {
                fail(line_no, cur.id,
                     "head " + std::to_string(cur.tokens[i].head) + " out of range 0.." +
                         std::to_string(n));
            }
        }
        blocks.push_back(std::move(cur));
        cur = Block{};
        cur_has_content = false;
        expected_id = 1;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush_block();
            continue;
        }
        if (line[0] == '#') {
            std::string c = line.substr(1);
            std::size_t s = c.find_first_not_of(" \t");
            if (s != std::string::npos) c = c.substr(s);
            if (c.rfind("sent_id", 0) == 0) {
                std::size_t eq = c.find('=');
                if (eq != std::string::npos) {
                    std::string v = c.substr(eq + 1);
                    std::size_t vs = v.find_first_not_of(" \t");
                    cur.id = vs == std::string::npos ? "" : v.substr(vs);
                    cur_has_content = true;
                }
            }
            continue;
        }
        auto cols = split_tabs(line);
        if (cols.size() != 10) {
            fail(line_no, cur.id,
                 "expected 10 tab-separated columns, got " + std::to_string(cols.size()));
        }
        if (is_skippable_id(cols[0])) continue;
        if (!is_integer(cols[0])) fail(line_no, cur.id, "bad token id '" + cols[0] + "'");
        int tid = std::stoi(cols[0]);
        if (tid != expected_id) {
            fail(line_no, cur.id,
                 "non-contiguous token id " + std::to_string(tid) + ", expected " +
                     std::to_string(expected_id));
        }
        ++expected_id;
        cur_has_content = true;

        Token tok;
        tok.form = cols[1];
        tok.upos = cols[3];
        if (!is_valid_upos(tok.upos)) fail(line_no, cur.id, "unknown UPOS tag '" + tok.upos + "'");
        if (!is_integer(cols[6])) fail(line_no, cur.id, "bad HEAD '" + cols[6] + "'");
        tok.head = std::stoi(cols[6]);
        tok.deprel = cols[7];
        tok.feats = parse_feats(cols[5], line_no, cur.id);
        tok.ner = parse_ner(cols[9], line_no, cur.id);
        cur.tokens.push_back(std::move(tok));
    }
    flush_block();

    // Group contiguous blocks sharing an id into one document; heads are
    // offset so ids stay 1..n over the concatenation.
    std::vector<AnnotatedSentence> docs;
    for (auto& b : blocks) {
        if (!docs.empty() && docs.back().id == b.id) {
            AnnotatedSentence& doc = docs.back();
            int offset = static_cast<int>(doc.tokens.size());
            for (auto& t : b.tokens) {
                if (t.head != 0) t.head += offset;
                doc.tokens.push_back(std::move(t));
            }
            doc.sentence_count_in_doc += 1;
            doc.block_sizes.push_back(b.tokens.size());
        } else {
            AnnotatedSentence doc;
            doc.id = b.id;
            doc.block_sizes.push_back(b.tokens.size());
            doc.tokens = std::move(b.tokens);
            doc.sentence_count_in_doc = 1;
            docs.push_back(std::move(doc));
        }
    }
    return docs;
}

std::vector<AnnotatedSentence> parse_conllu_string(const std::string& text) {
    std::istringstream in(text);
    return parse_conllu(in);
}

std::vector<AnnotatedSentence> parse_conllu_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open conllu file: " + path);
    return parse_conllu(in);
}

void serialize_conllu(std::ostream& out, const AnnotatedSentence& ann) {
    std::size_t tok_idx = 0;
    for (std::size_t block = 0; block < ann.block_sizes.size(); ++block) {
        out << "# sent_id = " << ann.id << '\n';
        std::size_t n = ann.block_sizes[block];
        for (std::size_t i = 0; i < n; ++i, ++tok_idx) {
            const Token& t = ann.tokens[tok_idx];
            int local_head = t.head == 0 ? 0 : t.head - static_cast<int>(tok_idx - i);
            out << (i + 1) << '\t' << t.form << "\t_\t" << t.upos << "\t_\t";
            if (t.feats.empty()) {
                out << '_';
            } else {
                for (std::size_t f = 0; f < t.feats.size(); ++f) {
                    if (f) out << '|';
                    out << t.feats[f].first << '=' << t.feats[f].second;
                }
            }
            out << '\t' << local_head << '\t' << t.deprel << "\t_\t";
            if (t.ner) {
                out << "NER=" << (t.ner->begin ? "B-" : "I-") << t.ner->category;
            } else {
                out << '_';
            }
            out << '\n';
        }
        out << '\n';
    }
}

std::string serialize_conllu_string(const std::vector<AnnotatedSentence>& anns) {
    std::ostringstream out;
    for (const auto& a : anns) serialize_conllu(out, a);
    return out.str();
}

JoinResult join_bitext(const std::vector<BitextPair>& pairs,
                       const std::vector<AnnotatedSentence>& annotations) {
    auto report_dups = [](const std::vector<std::string>& dups, const char* side) {
        if (dups.empty()) return;
        std::string msg = std::string("duplicate ") + side + " ids:";
        for (const auto& d : dups) msg += " " + d;
        throw DataError(msg);
    };

    std::unordered_map<std::string, const AnnotatedSentence*> by_id;
    {
        std::vector<std::string> dups;
        for (const auto& a : annotations) {
            if (!by_id.emplace(a.id, &a).second) dups.push_back(a.id);
        }
        report_dups(dups, "annotation");
    }
    {
        std::unordered_set<std::string> seen;
        std::vector<std::string> dups;
        for (const auto& p : pairs) {
            if (!seen.insert(p.id).second) dups.push_back(p.id);
        }
        report_dups(dups, "bitext");
    }

    JoinResult res;
    std::unordered_set<std::string> matched;
    for (const auto& p : pairs) {
        auto it = by_id.find(p.id);
        if (it == by_id.end()) {
            res.unmatched_pair_ids.push_back(p.id);
        } else {
            matched.insert(p.id);
            res.joined.emplace_back(p, *it->second);
        }
    }
    for (const auto& a : annotations) {
        if (!matched.count(a.id)) res.unmatched_annotation_ids.push_back(a.id);
    }
    return res;
}

} // namespace lalita
