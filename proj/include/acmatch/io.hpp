#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "acmatch/aho_corasick.hpp"
#include "acmatch/errors.hpp"

namespace acmatch {

// Dictionary read from a one-pattern-per-line file, plus load diagnostics.
struct PatternFile {
    std::vector<Pattern> patterns;
    std::size_t duplicates = 0;     // repeated lines dropped (first occurrence kept)
    std::size_t skipped_empty = 0;  // empty lines
};

// Whole file as raw bytes; no decoding, no newline treatment.
inline std::string load_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

// Splits on LF, strips one trailing CR per line, skips empty lines,
// deduplicates keeping the first occurrence, and assigns dense ids in load
// order. Patterns cannot contain newline bytes; that is a limitation of the
// one-per-line format itself.
inline PatternFile load_patterns(const std::filesystem::path& path) {
    const std::string raw = load_input(path);

    PatternFile result;
    std::unordered_set<std::string_view> seen;
    const std::string_view text(raw);
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t newline = text.find('\n', start);
        std::string_view line = (newline == std::string_view::npos)
                                    ? text.substr(start)
                                    : text.substr(start, newline - start);
        start = (newline == std::string_view::npos) ? text.size() : newline + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) {
            ++result.skipped_empty;
            continue;
        }
        if (!seen.insert(line).second) {
            ++result.duplicates;
            continue;
        }
        result.patterns.push_back(
            Pattern{static_cast<std::uint32_t>(result.patterns.size()), std::string(line)});
    }
    if (result.patterns.empty())
        throw EmptyDictionaryError("no patterns in " + path.string());
    return result;
}

// Raw byte write.
inline void write_bytes(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

// Writes patterns one per line, LF-terminated.
inline void write_pattern_file(const std::filesystem::path& path,
                               const std::vector<Pattern>& patterns) {
    std::string buffer;
    for (const Pattern& p : patterns) {
        if (p.bytes.find('\n') != std::string::npos)
            throw Error("patterns containing newline bytes cannot be written one per line");
        buffer += p.bytes;
        buffer += '\n';
    }
    write_bytes(path, buffer);
}

}  // namespace acmatch
