#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "acmatch/aho_corasick.hpp"
#include "acmatch/errors.hpp"

namespace acmatch {

// Recipe for a synthetic corpus: a random input text over a small alphabet
// plus a dictionary of distinct random patterns, a fraction of which are
// planted into the input so they are guaranteed to occur at least once.
struct CorpusSpec {
    std::string alphabet = "ACGT";
    std::size_t input_bytes = 0;
    std::size_t pattern_count = 0;
    std::size_t min_len = 4;
    std::size_t max_len = 8;
    double plant_fraction = 0.5;
    std::uint64_t seed = 0;
};

struct Corpus {
    std::string input;
    std::vector<Pattern> patterns;
    std::size_t planted = 0;
};

namespace detail {

// rng() % n is slightly biased for general n, but unlike
// std::uniform_int_distribution it draws the same sequence on every
// standard library, which keeps corpora reproducible across toolchains.
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

}  // namespace detail

// Deterministic given the seed: same spec, same bytes.
inline Corpus generate_corpus(const CorpusSpec& spec) {
    std::string alphabet;
    for (char c : spec.alphabet)
        if (alphabet.find(c) == std::string::npos) alphabet.push_back(c);
    if (alphabet.empty()) throw Error("alphabet must not be empty");
    if (spec.min_len < 1 || spec.min_len > spec.max_len)
        throw Error("need 1 <= min_len <= max_len");
    if (spec.pattern_count < 1) throw Error("pattern_count must be >= 1");
    if (spec.input_bytes < spec.max_len) throw Error("input_bytes must be >= max_len");
    if (!(spec.plant_fraction >= 0.0 && spec.plant_fraction <= 1.0))
        throw Error("plant_fraction must be in [0, 1]");

    // Enough distinct strings to fill the dictionary?
    double space = 0.0;
    for (std::size_t len = spec.min_len; len <= spec.max_len; ++len)
        space += std::pow(static_cast<double>(alphabet.size()), static_cast<double>(len));
    if (static_cast<double>(spec.pattern_count) > space)
        throw Error("pattern_count exceeds the number of distinct strings available");

    std::mt19937_64 rng(spec.seed);

    Corpus corpus;
    corpus.input.resize(spec.input_bytes);
    for (char& c : corpus.input) c = alphabet[detail::draw(rng, alphabet.size())];

    std::unordered_set<std::string> seen;
    seen.reserve(spec.pattern_count * 2);
    corpus.patterns.reserve(spec.pattern_count);
    const std::size_t len_span = spec.max_len - spec.min_len + 1;
    std::size_t attempts_left = 1000 + 200 * spec.pattern_count;
    while (corpus.patterns.size() < spec.pattern_count) {
        if (attempts_left-- == 0)
            throw Error("could not draw enough distinct patterns; shrink pattern_count "
                        "or widen the length range");
        std::string candidate(spec.min_len + detail::draw(rng, len_span), '\0');
        for (char& c : candidate) c = alphabet[detail::draw(rng, alphabet.size())];
        if (!seen.insert(candidate).second) continue;
        corpus.patterns.push_back(
            Pattern{static_cast<std::uint32_t>(corpus.patterns.size()), std::move(candidate)});
    }

    // Plant the first ceil(fraction * count) patterns at non-overlapping
    // offsets so later plants cannot clobber earlier ones.
    std::size_t plant_count = static_cast<std::size_t>(
        std::ceil(spec.plant_fraction * static_cast<double>(spec.pattern_count)));
    if (plant_count > spec.pattern_count) plant_count = spec.pattern_count;

    std::map<std::size_t, std::size_t> occupied;  // start -> end (exclusive)
    const auto overlaps = [&occupied](std::size_t start, std::size_t end) {
        auto it = occupied.upper_bound(start);
        if (it != occupied.end() && it->first < end) return true;
        if (it != occupied.begin() && std::prev(it)->second > start) return true;
        return false;
    };
    for (std::size_t i = 0; i < plant_count; ++i) {
        const std::string& bytes = corpus.patterns[i].bytes;
        const std::size_t limit = spec.input_bytes - bytes.size();  // inclusive max offset
        bool placed = false;
        std::size_t offset = 0;
        for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
            offset = detail::draw(rng, limit + 1);
            placed = !overlaps(offset, offset + bytes.size());
        }
        if (!placed) {
            // First-fit sweep over the gaps between occupied intervals.
            std::size_t cursor = 0;
            for (const auto& [start, end] : occupied) {
                if (start >= cursor && start - cursor >= bytes.size()) {
                    offset = cursor;
                    placed = true;
                    break;
                }
                if (end > cursor) cursor = end;
            }
            if (!placed && spec.input_bytes - cursor >= bytes.size()) {
                offset = cursor;
                placed = true;
            }
        }
        if (!placed)
            throw InfeasiblePlantError("cannot plant pattern " + std::to_string(i) +
                                       " without exceeding input_bytes");
        corpus.input.replace(offset, bytes.size(), bytes);
        occupied.emplace(offset, offset + bytes.size());
    }
    corpus.planted = plant_count;
    return corpus;
}

}  // namespace acmatch
