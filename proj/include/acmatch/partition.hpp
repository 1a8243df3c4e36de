#pragma once

#include <chrono>
#include <cstdint>
#include <exception>
#include <queue>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "acmatch/aho_corasick.hpp"
#include "acmatch/errors.hpp"

namespace acmatch {

namespace detail {

inline double elapsed_seconds(std::chrono::steady_clock::time_point from,
                              std::chrono::steady_clock::time_point to) {
    return std::chrono::duration<double>(to - from).count();
}

}  // namespace detail

// Assignment of dictionary patterns to worker chunks: contiguous runs of
// dictionary order whose sizes differ by at most one. Chunks past the end
// of a small dictionary are empty and get no worker.
struct PartitionPlan {
    unsigned worker_count = 1;
    std::vector<std::vector<std::uint32_t>> chunks;  // global pattern ids

    std::size_t non_empty_chunks() const noexcept {
        std::size_t n = 0;
        for (const auto& c : chunks) n += !c.empty();
        return n;
    }
};

// Splits the dictionary into `worker_count` contiguous chunks; the first
// (size mod worker_count) chunks carry one extra pattern.
inline PartitionPlan split_patterns(const std::vector<Pattern>& patterns, unsigned worker_count) {
    if (worker_count < 1) throw InvalidWorkerCountError("worker count must be >= 1");
    if (patterns.empty()) throw EmptyDictionaryError("dictionary is empty");

    PartitionPlan plan;
    plan.worker_count = worker_count;
    plan.chunks.resize(worker_count);
    const std::size_t total = patterns.size();
    const std::size_t base = total / worker_count;
    const std::size_t extra = total % worker_count;
    std::uint32_t next = 0;
    for (std::size_t k = 0; k < worker_count; ++k) {
        const std::size_t size = base + (k < extra ? 1 : 0);
        auto& chunk = plan.chunks[k];
        chunk.reserve(size);
        for (std::size_t j = 0; j < size; ++j) chunk.push_back(next++);
    }
    return plan;
}

// K-way merge of per-worker result lists, each already in (end, pattern_id)
// order. Chunks are disjoint, so no record can appear twice and no
// deduplication is needed.
inline std::vector<MatchRecord> merge_matches(const std::vector<std::vector<MatchRecord>>& lists) {
    struct Cursor {
        const std::vector<MatchRecord>* list;
        std::size_t pos;
    };
    const auto after = [](const Cursor& x, const Cursor& y) {
        return match_before((*y.list)[y.pos], (*x.list)[x.pos]);
    };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(after)> heap(after);

    std::size_t total = 0;
    for (const auto& list : lists) {
        total += list.size();
        if (!list.empty()) heap.push(Cursor{&list, 0});
    }
    std::vector<MatchRecord> merged;
    merged.reserve(total);
    while (!heap.empty()) {
        Cursor cursor = heap.top();
        heap.pop();
        merged.push_back((*cursor.list)[cursor.pos]);
        if (++cursor.pos < cursor.list->size()) heap.push(cursor);
    }
    return merged;
}

// Results and timings of one dictionary-partitioned run.
struct PartitionedRun {
    std::vector<MatchRecord> matches;           // merged, (end, pattern_id) order
    std::vector<double> per_worker_build_s;     // one entry per launched worker
    std::vector<double> per_worker_scan_s;
    double total_wall_s = 0.0;                  // split + builds + scans + merge
    unsigned worker_count = 1;                  // as requested
    unsigned workers_launched = 0;              // non-empty chunks
};

// Splits the dictionary into `worker_count` chunks, builds one automaton per
// non-empty chunk in its own thread, scans the same input with each machine,
// and merges the per-worker results back into global (end, pattern_id)
// order. Result records carry global dictionary ids.
//
// A build failure in any worker fails the whole run. Wall time covers the
// split, every build and scan, and the merge; file I/O never happens here.
inline PartitionedRun run_partitioned(const std::vector<Pattern>& patterns,
                                      std::string_view input, unsigned worker_count) {
    using clock = std::chrono::steady_clock;
    const auto run_start = clock::now();

    const PartitionPlan plan = split_patterns(patterns, worker_count);
    std::vector<const std::vector<std::uint32_t>*> live;
    live.reserve(plan.chunks.size());
    for (const auto& chunk : plan.chunks)
        if (!chunk.empty()) live.push_back(&chunk);

    struct WorkerSlot {
        std::vector<MatchRecord> matches;
        double build_s = 0.0;
        double scan_s = 0.0;
        std::exception_ptr error;
    };
    std::vector<WorkerSlot> slots(live.size());

    const auto worker_body = [&](std::size_t k) {
        WorkerSlot& slot = slots[k];
        try {
            const auto& chunk = *live[k];
            const auto build_start = clock::now();
            std::vector<Pattern> local;
            local.reserve(chunk.size());
            for (std::size_t j = 0; j < chunk.size(); ++j)
                local.push_back(Pattern{static_cast<std::uint32_t>(j), patterns[chunk[j]].bytes});
            const Automaton machine = build(std::move(local));
            const auto scan_start = clock::now();
            slot.matches = scan(machine, input);
            const auto scan_end = clock::now();
            // Chunk ids ascend with local ids, so the remap keeps the
            // (end, pattern_id) order intact.
            for (MatchRecord& r : slot.matches) r.pattern_id = chunk[r.pattern_id];
            slot.build_s = detail::elapsed_seconds(build_start, scan_start);
            slot.scan_s = detail::elapsed_seconds(scan_start, scan_end);
        } catch (...) {
            slot.error = std::current_exception();
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(live.size());
    for (std::size_t k = 0; k < live.size(); ++k) threads.emplace_back(worker_body, k);
    for (auto& t : threads) t.join();
    for (const auto& slot : slots)
        if (slot.error) std::rethrow_exception(slot.error);

    PartitionedRun run;
    run.worker_count = worker_count;
    run.workers_launched = static_cast<unsigned>(live.size());
    std::vector<std::vector<MatchRecord>> lists;
    lists.reserve(slots.size());
    for (auto& slot : slots) {
        lists.push_back(std::move(slot.matches));
        run.per_worker_build_s.push_back(slot.build_s);
        run.per_worker_scan_s.push_back(slot.scan_s);
    }
    run.matches = merge_matches(lists);
    run.total_wall_s = detail::elapsed_seconds(run_start, clock::now());
    return run;
}

}  // namespace acmatch
