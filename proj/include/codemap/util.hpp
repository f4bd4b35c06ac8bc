#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace codemap {

// FNV-1a, used for content hashes in artifact headers and the index doc table.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 14695981039346656037ull) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

std::string lowercase(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Split on any run of whitespace; no empty fields.
std::vector<std::string> split_ws(std::string_view s);

std::string_view trim(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Canonical float formatting for artifacts: shortest round-trippable form.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace codemap
