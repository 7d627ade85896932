#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace cascadelab {

/// FNV-1a over a byte range. Not cryptographic; used for fingerprints only.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

/// Fingerprint of a file's contents, 16 hex digits. Throws MissingInputError.
std::string file_fingerprint(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double (stable across runs).
std::string format_double(double v);

} // namespace cascadelab
