#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lalita::unicode {

// Decodes UTF-8 into code points. Invalid byte sequences decode to U+FFFD,
// one replacement per bad byte.
std::vector<char32_t> decode_utf8(std::string_view s);

std::string encode_utf8(const std::vector<char32_t>& cps);

char32_t to_lower(char32_t cp);

// True for general category L* (letters of any script).
bool is_letter(char32_t cp);

bool is_ascii_letter(char32_t cp);

// Simple (1:1) lowercasing of a UTF-8 string.
std::string lowercase(std::string_view s);

// Canonical composition: reorders combining marks by canonical combining
// class, then applies canonical composition (incl. Hangul). Input that is
// already NFC passes through unchanged; NFD input composes to NFC. Singleton
// decompositions are not remapped.
std::string compose_nfc(std::string_view s);

} // namespace lalita::unicode
