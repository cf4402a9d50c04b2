#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lalita {

// One aligned sentence pair. Sidecar scalars (e.g. nlm_ppl, avg_logprob)
// ride along from the optional fourth TSV column.
struct BitextPair {
    std::string id;
    std::string source;
    std::string target;
    std::map<std::string, double> sidecar;

    std::optional<double> sidecar_value(const std::string& key) const;

    bool operator==(const BitextPair&) const = default;
};

// Headerless TSV: id<TAB>source<TAB>target[<TAB>key=value;...]
std::vector<BitextPair> read_bitext(std::istream& in);
std::vector<BitextPair> read_bitext_file(const std::string& path);

void write_bitext(std::ostream& out, const std::vector<BitextPair>& pairs);
void write_bitext_file(const std::string& path, const std::vector<BitextPair>& pairs);

// Sidecar TSV (id<TAB>key=value;...) merged onto pairs; later values win.
void merge_sidecar_file(std::vector<BitextPair>& pairs, const std::string& path);

// Maximal nonwhitespace runs.
std::vector<std::string> whitespace_tokens(const std::string& text);
std::size_t count_tokens(const std::string& text);

} // namespace lalita
