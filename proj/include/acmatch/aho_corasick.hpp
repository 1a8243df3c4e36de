#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "acmatch/errors.hpp"

namespace acmatch {

using StateId = std::uint32_t;

inline constexpr StateId kRoot = 0;

// One dictionary keyword. Ids are dense, 0-based, and follow load order.
struct Pattern {
    std::uint32_t id = 0;
    std::string bytes;
};

// One occurrence of one pattern. `end` is the 0-based offset of the
// occurrence's last byte; the start offset is `end - bytes.size() + 1`.
struct MatchRecord {
    std::uint32_t pattern_id = 0;
    std::size_t end = 0;

    friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// Scan results are ordered by (end, pattern_id) ascending.
inline bool match_before(const MatchRecord& a, const MatchRecord& b) noexcept {
    if (a.end != b.end) return a.end < b.end;
    return a.pattern_id < b.pattern_id;
}

// Counters filled by the instrumented scan overload. A single scan performs
// at most one failure follow per input byte in total (depth grows by at most
// one per byte and every follow strictly shrinks it).
struct ScanStats {
    std::uint64_t failure_follows = 0;
};

// The pattern-matching machine: a keyword trie plus failure links and
// per-state output sets. Immutable once built; any number of threads may
// scan with the same machine concurrently.
//
// States are numbered in depth-first preorder over the trie, visiting the
// children of every node in insertion order; state 0 is the root. For the
// classic {HIS, SHE, HERS} dictionary this yields
//   1=H 2=HI 3=HIS 4=HE 5=HER 6=HERS 7=S 8=SH 9=SHE.
class Automaton {
public:
    std::size_t state_count() const noexcept { return states_.size(); }

    const std::vector<Pattern>& patterns() const noexcept { return patterns_; }

    // The goto transition out of `s` on byte `b`, if one exists. Failure
    // transitions are never taken here; see next_state() for the total
    // transition function.
    std::optional<StateId> goto_transition(StateId s, unsigned char b) const {
        assert(s < states_.size());
        const auto& edges = states_[s].edges;
        auto it = std::lower_bound(edges.begin(), edges.end(), b,
                                   [](const Edge& e, unsigned char key) { return e.first < key; });
        if (it != edges.end() && it->first == b) return it->second;
        return std::nullopt;
    }

    // The goto transitions out of `s`, sorted by byte.
    std::span<const std::pair<unsigned char, StateId>> transitions(StateId s) const {
        assert(s < states_.size());
        return states_[s].edges;
    }

    // Failure link of `s`; failure(0) = 0. Points to the state representing
    // the longest proper suffix of s's string that is also a keyword prefix.
    StateId failure(StateId s) const {
        assert(s < states_.size());
        return states_[s].fail;
    }

    // Ids of every pattern whose occurrence ends when the machine enters
    // `s`, sorted ascending. Suffix-closed: outputs(s) includes
    // outputs(failure(s)).
    std::span<const std::uint32_t> outputs(StateId s) const {
        assert(s < states_.size());
        return states_[s].out;
    }

    // Length of the keyword prefix this state represents; depth(0) = 0.
    std::uint32_t depth(StateId s) const {
        assert(s < states_.size());
        return states_[s].depth;
    }

private:
    using Edge = std::pair<unsigned char, StateId>;

    struct State {
        std::vector<Edge> edges;  // sorted by byte
        StateId fail = kRoot;
        std::uint32_t depth = 0;
        std::vector<std::uint32_t> out;  // sorted pattern ids
    };

    std::vector<State> states_;
    std::vector<Pattern> patterns_;
    // Dense copy of the root's goto row; kRoot where no edge exists, which
    // is exactly the root's implicit self-loop.
    std::array<StateId, 256> root_row_{};

    friend Automaton build(std::vector<Pattern> patterns);
    friend std::vector<MatchRecord> scan(const Automaton&, std::string_view, ScanStats&);
};

// Constructs the matching machine from the dictionary. Two phases: insert
// every pattern into a keyword trie, then compute failure links breadth
// first over trie depth, augmenting each state's outputs with the outputs
// of its failure state.
//
// Throws EmptyDictionaryError / EmptyPatternError, and Error when ids are
// not dense in load order.
inline Automaton build(std::vector<Pattern> patterns) {
    if (patterns.empty()) throw EmptyDictionaryError("dictionary is empty");
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (patterns[i].bytes.empty())
            throw EmptyPatternError("pattern " + std::to_string(i) + " is empty");
        if (patterns[i].id != i)
            throw Error("pattern ids must be dense and follow load order");
    }

    // Phase 1: keyword trie. Children are kept in insertion order so the
    // preorder pass below numbers whole keyword branches consecutively.
    struct TrieNode {
        std::vector<std::pair<unsigned char, std::uint32_t>> kids;
        std::vector<std::uint32_t> own;
        std::uint32_t depth = 0;
    };
    std::vector<TrieNode> trie(1);
    for (const Pattern& p : patterns) {
        std::uint32_t node = 0;
        for (char c : p.bytes) {
            const auto b = static_cast<unsigned char>(c);
            const auto& kids = trie[node].kids;
            auto it = std::find_if(kids.begin(), kids.end(),
                                   [b](const auto& e) { return e.first == b; });
            if (it != kids.end()) {
                node = it->second;
                continue;
            }
            const auto child = static_cast<std::uint32_t>(trie.size());
            const std::uint32_t child_depth = trie[node].depth + 1;
            trie[node].kids.emplace_back(b, child);
            trie.emplace_back();
            trie.back().depth = child_depth;
            node = child;
        }
        trie[node].own.push_back(p.id);
    }

    // Phase 2: depth-first preorder numbering, then freeze the trie into
    // contiguous per-state arrays with edges re-sorted by byte for lookup.
    std::vector<std::uint32_t> order;
    order.reserve(trie.size());
    {
        std::vector<std::uint32_t> stack{0};
        while (!stack.empty()) {
            const std::uint32_t n = stack.back();
            stack.pop_back();
            order.push_back(n);
            const auto& kids = trie[n].kids;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(it->second);
        }
    }
    std::vector<StateId> renumbered(trie.size());
    for (std::uint32_t s = 0; s < order.size(); ++s) renumbered[order[s]] = s;

    Automaton machine;
    machine.patterns_ = std::move(patterns);
    machine.states_.resize(trie.size());
    for (StateId s = 0; s < machine.states_.size(); ++s) {
        TrieNode& node = trie[order[s]];
        auto& state = machine.states_[s];
        state.depth = node.depth;
        state.out = std::move(node.own);  // already ascending: patterns are inserted in id order
        state.edges.reserve(node.kids.size());
        for (const auto& [b, child] : node.kids) state.edges.emplace_back(b, renumbered[child]);
        std::sort(state.edges.begin(), state.edges.end());
    }

    // Phase 3: failure links in breadth-first order. A state reached from
    // parent u by byte c fails to the state reached by running c from
    // failure(u); root children fail to the root.
    std::vector<StateId> queue;
    queue.reserve(machine.states_.size());
    for (const auto& [b, child] : machine.states_[kRoot].edges) {
        machine.states_[child].fail = kRoot;
        queue.push_back(child);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const StateId u = queue[head];
        for (const auto& [b, child] : machine.states_[u].edges) {
            StateId f = machine.states_[u].fail;
            std::optional<StateId> target;
            for (;;) {
                target = machine.goto_transition(f, b);
                if (target || f == kRoot) break;
                f = machine.states_[f].fail;
            }
            auto& child_state = machine.states_[child];
            child_state.fail = target.value_or(kRoot);
            if (const auto& inherited = machine.states_[child_state.fail].out; !inherited.empty()) {
                std::vector<std::uint32_t> merged;
                merged.reserve(child_state.out.size() + inherited.size());
                std::merge(child_state.out.begin(), child_state.out.end(), inherited.begin(),
                           inherited.end(), std::back_inserter(merged));
                child_state.out = std::move(merged);
            }
            queue.push_back(child);
        }
    }

    machine.root_row_.fill(kRoot);
    for (const auto& [b, child] : machine.states_[kRoot].edges) machine.root_row_[b] = child;
    return machine;
}

// Total transition function: the goto edge when one exists, otherwise the
// state found by following failure links until a goto edge applies; a byte
// with no edge at the root stays at the root (the implicit self-loop).
inline StateId next_state(const Automaton& a, StateId s, unsigned char b) {
    assert(s < a.state_count());
    for (;;) {
        if (auto target = a.goto_transition(s, b)) return *target;
        if (s == kRoot) return kRoot;
        s = a.failure(s);
    }
}

// Processes the input in a single pass, reporting every occurrence of every
// dictionary pattern, overlapping and nested ones included. Records come
// out ordered by (end, pattern_id).
inline std::vector<MatchRecord> scan(const Automaton& a, std::string_view input,
                                     ScanStats& stats) {
    std::vector<MatchRecord> records;
    StateId s = kRoot;
    const std::size_t n = input.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto b = static_cast<unsigned char>(input[i]);
        for (;;) {
            if (s == kRoot) {
                s = a.root_row_[b];
                break;
            }
            if (auto target = a.goto_transition(s, b)) {
                s = *target;
                break;
            }
            s = a.states_[s].fail;
            ++stats.failure_follows;
        }
        for (const std::uint32_t id : a.states_[s].out) records.push_back(MatchRecord{id, i});
    }
    return records;
}

inline std::vector<MatchRecord> scan(const Automaton& a, std::string_view input) {
    ScanStats stats;
    return scan(a, input, stats);
}

// Occurrence count (not distinct-pattern count).
inline std::size_t match_count(std::span<const MatchRecord> records) noexcept {
    return records.size();
}

}  // namespace acmatch
