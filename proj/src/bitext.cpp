#include "lalita/bitext.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "lalita/errors.hpp"
#include "lalita/io_util.hpp"

namespace lalita {

namespace {

std::map<std::string, double> parse_sidecar(const std::string& field, std::size_t line_no) {
    std::map<std::string, double> out;
    std::size_t pos = 0;
    while (pos < field.size()) {
        std::size_t end = field.find(';', pos);
        if (end == std::string::npos) end = field.size();
        std::string entry = field.substr(pos, end - pos);
        pos = end + 1;
        if (entry.empty()) continue;
        std::size_t eq = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw DataError("bitext line " + std::to_string(line_no) +
                            ": bad sidecar entry '" + entry + "'");
        }
        std::string key = entry.substr(0, eq);
        std::string val = entry.substr(eq + 1);
        try {
            std::size_t used = 0;
            double d = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            out[key] = d;
        } catch (const std::exception&) {
            throw DataError("bitext line " + std::to_string(line_no) +
                            ": sidecar value for '" + key + "' is not a number: '" + val + "'");
        }
    }
    return out;
}

} // namespace

std::optional<double> BitextPair::sidecar_value(const std::string& key) const {
    auto it = sidecar.find(key);
    if (it == sidecar.end()) return std::nullopt;
    return it->second;
}

std::vector<BitextPair> read_bitext(std::istream& in) {
    std::vector<BitextPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() < 3 || fields.size() > 4) {
            throw DataError("bitext line " + std::to_string(line_no) + ": expected 3 or 4 " +
                            "tab-separated columns, got " + std::to_string(fields.size()));
        }
        BitextPair p;
        p.id = fields[0];
        p.source = fields[1];
        p.target = fields[2];
        if (p.id.empty()) {
            throw DataError("bitext line " + std::to_string(line_no) + ": empty id");
        }
        if (fields.size() == 4) p.sidecar = parse_sidecar(fields[3], line_no);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

std::vector<BitextPair> read_bitext_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open bitext file: " + path);
    return read_bitext(in);
}

void write_bitext(std::ostream& out, const std::vector<BitextPair>& pairs) {
    for (const auto& p : pairs) {
        out << p.id << '\t' << p.source << '\t' << p.target;
        if (!p.sidecar.empty()) {
            out << '\t';
            bool first = true;
            for (const auto& [k, v] : p.sidecar) {
                if (!first) out << ';';
                first = false;
                out << k << '=' << format_double(v);
            }
        }
        out << '\n';
    }
}

void write_bitext_file(const std::string& path, const std::vector<BitextPair>& pairs) {
    write_file_atomic(path, [&](std::ostream& out) { write_bitext(out, pairs); });
}

void merge_sidecar_file(std::vector<BitextPair>& pairs, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open sidecar file: " + path);
    std::unordered_map<std::string, std::map<std::string, double>> by_id;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2) {
            throw DataError("sidecar line " + std::to_string(line_no) +
                            ": expected id<TAB>key=value;...");
        }
        auto vals = parse_sidecar(fields[1], line_no);
        auto& dst = by_id[fields[0]];
        for (const auto& [k, v] : vals) dst[k] = v;
    }
    for (auto& p : pairs) {
        auto it = by_id.find(p.id);
        if (it == by_id.end()) continue;
        for (const auto& [k, v] : it->second) p.sidecar[k] = v;
    }
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

std::size_t count_tokens(const std::string& text) {
    std::size_t n = 0;
    bool in_tok = false;
    for (unsigned char c : text) {
        bool ws = std::isspace(c);
        if (!ws && !in_tok) ++n;
        in_tok = !ws;
    }
    return n;
}

} // namespace lalita
