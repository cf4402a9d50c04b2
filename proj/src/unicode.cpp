#include "lalita/unicode.hpp"

#include <algorithm>

namespace lalita::unicode {

namespace {

struct CpPair {
    char32_t from;
    char32_t to;
};
struct CpRange {
    char32_t lo;
    char32_t hi;
};
struct CpClass {
    char32_t cp;
    std::uint8_t ccc;
};
struct CpCompose {
    char32_t starter;
    char32_t comb;
    char32_t composed;
};

#include "unicode_tables.inc"

constexpr char32_t kReplacement = 0xFFFD;

std::uint8_t combining_class(char32_t cp) {
    auto it = std::lower_bound(std::begin(kCombiningClasses), std::end(kCombiningClasses), cp,
                               [](const CpClass& e, char32_t v) { return e.cp < v; });
    if (it != std::end(kCombiningClasses) && it->cp == cp) return it->ccc;
    return 0;
}

char32_t compose_pair(char32_t a, char32_t b) {
    // Hangul LV / LVT composition.
    constexpr char32_t LBase = 0x1100, VBase = 0x1161, TBase = 0x11A7, SBase = 0xAC00;
    constexpr int LCount = 19, VCount = 21, TCount = 28;
    if (a >= LBase && a < LBase + LCount && b >= VBase && b < VBase + VCount) {
        return SBase + ((a - LBase) * VCount + (b - VBase)) * TCount;
    }
    if (a >= SBase && a < SBase + 11172 && (a - SBase) % TCount == 0 && b > TBase &&
        b < TBase + TCount) {
        return a + (b - TBase);
    }
    auto it = std::lower_bound(std::begin(kComposePairs), std::end(kComposePairs),
                               std::pair<char32_t, char32_t>{a, b},
                               [](const CpCompose& e, const std::pair<char32_t, char32_t>& v) {
                                   return e.starter != v.first ? e.starter < v.first
                                                               : e.comb < v.second;
                               });
    if (it != std::end(kComposePairs) && it->starter == a && it->comb == b) return it->composed;
    return 0;
}

} // namespace

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        char32_t cp = 0;
        std::size_t len = 0;
        if (c < 0x80) {
            cp = c;
            len = 1;
        } else if ((c & 0xE0) == 0xC0) {
            cp = c & 0x1F;
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            cp = c & 0x0F;
            len = 3;
        } else if ((c & 0xF8) == 0xF0) {
            cp = c & 0x07;
            len = 4;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t j = 1; j < len; ++j) {
            unsigned char cc = s[i + j];
            if ((cc & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (!ok || cp > 0x10FFFF) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

char32_t to_lower(char32_t cp) {
    auto it = std::lower_bound(std::begin(kLowerPairs), std::end(kLowerPairs), cp,
                               [](const CpPair& e, char32_t v) { return e.from < v; });
    if (it != std::end(kLowerPairs) && it->from == cp) return it->to;
    return cp;
}

bool is_letter(char32_t cp) {
    auto it = std::upper_bound(std::begin(kLetterRanges), std::end(kLetterRanges), cp,
                               [](char32_t v, const CpRange& e) { return v < e.lo; });
    if (it == std::begin(kLetterRanges)) return false;
    --it;
    return cp >= it->lo && cp <= it->hi;
}

bool is_ascii_letter(char32_t cp) {
    return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z');
}

std::string lowercase(std::string_view s) {
    auto cps = decode_utf8(s);
    for (auto& cp : cps) cp = to_lower(cp);
    return encode_utf8(cps);
}

std::string compose_nfc(std::string_view s) {
    auto cps = decode_utf8(s);

    // Canonical ordering: stable-sort maximal runs of nonzero-ccc marks.
    std::size_t i = 0;
    while (i < cps.size()) {
        if (combining_class(cps[i]) == 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < cps.size() && combining_class(cps[j]) != 0) ++j;
        std::stable_sort(cps.begin() + i, cps.begin() + j, [](char32_t a, char32_t b) {
            return combining_class(a) < combining_class(b);
        });
        i = j;
    }

    // Composition pass per UAX #15: combine each mark with the last starter
    // unless blocked by an intervening mark of >= combining class.
    std::vector<char32_t> out;
    out.reserve(cps.size());
    std::ptrdiff_t last_starter = -1;
    int last_ccc = -1;
    for (char32_t cp : cps) {
        int ccc = combining_class(cp);
        if (last_starter >= 0 && (last_ccc < ccc || last_ccc == -1)) {
            if (char32_t comp = compose_pair(out[last_starter], cp)) {
                out[last_starter] = comp;
                continue;
            }
        }
        if (ccc == 0) {
            last_starter = static_cast<std::ptrdiff_t>(out.size());
            last_ccc = -1;
        } else {
            last_ccc = ccc;
        }
        out.push_back(cp);
    }
    return encode_utf8(out);
}

} // namespace lalita::unicode
