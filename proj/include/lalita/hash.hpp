#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lalita {

// 64-bit FNV-1a. Used to fingerprint artifacts (config hash, schema hash);
// not cryptographic.
inline std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::string_view data);

} // namespace lalita
