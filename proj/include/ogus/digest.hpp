// FNV-1a 64-bit digests; used for input fingerprints and to derive
// deterministic default seeds from canonical serializations.
#pragma once

#include <cstdint>
#include <string>

namespace ogus {

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 1469598103934665603ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

} // namespace ogus
