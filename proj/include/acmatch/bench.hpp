#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "acmatch/corpus.hpp"
#include "acmatch/errors.hpp"
#include "acmatch/io.hpp"
#include "acmatch/partition.hpp"

namespace acmatch {

// One measurement job: which files, which worker counts, how many timed
// repeats per count. `seed` is reserved for any randomized ordering a
// caller may layer on top; the harness itself runs strictly sequentially.
struct BenchConfig {
    std::string pattern_path;
    std::string input_path;
    std::vector<unsigned> worker_counts;
    unsigned repeats = 5;
    unsigned warmup = 1;  // untimed runs before measuring
    std::uint64_t seed = 0;
};

// One report row: means over the timed repeats for one worker count at one
// input size. Component times are the slowest worker's (the critical path),
// so avg_total_s >= max(avg_build_s, avg_scan_s) up to timer resolution.
struct BenchRow {
    unsigned workers = 1;
    std::uint64_t input_bytes = 0;
    std::uint64_t dictionary_size = 0;
    std::uint64_t matches = 0;  // occurrence count, identical across repeats
    double avg_build_s = 0.0;
    double avg_scan_s = 0.0;
    double avg_total_s = 0.0;
    double stddev_total_s = 0.0;
    double throughput = 0.0;  // matches per second
};

inline constexpr std::string_view kCsvHeader =
    "workers,input_bytes,dictionary_size,matches,avg_build_s,avg_scan_s,"
    "avg_total_s,stddev_total_s,throughput";

// Matches per second.
inline double throughput(std::uint64_t matches, double avg_total_s) {
    if (!(avg_total_s > 0.0)) throw ZeroTimeError("average time must be positive");
    return static_cast<double>(matches) / avg_total_s;
}

namespace detail {

inline double mean(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double population_stddev(const std::vector<double>& xs, double mu) {
    double acc = 0.0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

inline void validate(const BenchConfig& config) {
    if (config.worker_counts.empty()) throw Error("worker_counts must not be empty");
    for (unsigned n : config.worker_counts)
        if (n < 1) throw InvalidWorkerCountError("worker count must be >= 1");
    if (config.repeats < 1) throw Error("repeats must be >= 1");
}

}  // namespace detail

// Benchmarks an in-memory dictionary and input. For each worker count:
// `warmup` discarded runs, then `repeats` timed runs of run_partitioned,
// averaged into one row. Rows come out ordered by worker count ascending.
inline std::vector<BenchRow> run_benchmark(const std::vector<Pattern>& patterns,
                                           std::string_view input, const BenchConfig& config) {
    detail::validate(config);
    std::vector<unsigned> counts = config.worker_counts;
    std::sort(counts.begin(), counts.end());

    std::vector<BenchRow> rows;
    rows.reserve(counts.size());
    for (unsigned n : counts) {
        for (unsigned w = 0; w < config.warmup; ++w) (void)run_partitioned(patterns, input, n);

        std::vector<double> build_s, scan_s, total_s;
        std::vector<MatchRecord> reference;
        for (unsigned r = 0; r < config.repeats; ++r) {
            PartitionedRun run = run_partitioned(patterns, input, n);
            build_s.push_back(*std::max_element(run.per_worker_build_s.begin(),
                                                run.per_worker_build_s.end()));
            scan_s.push_back(*std::max_element(run.per_worker_scan_s.begin(),
                                               run.per_worker_scan_s.end()));
            total_s.push_back(run.total_wall_s);
            if (r == 0)
                reference = std::move(run.matches);
            else if (run.matches != reference)
                throw Error("match results changed between repeats");
        }

        BenchRow row;
        row.workers = n;
        row.input_bytes = input.size();
        row.dictionary_size = patterns.size();
        row.matches = reference.size();
        row.avg_build_s = detail::mean(build_s);
        row.avg_scan_s = detail::mean(scan_s);
        row.avg_total_s = detail::mean(total_s);
        row.stddev_total_s = detail::population_stddev(total_s, row.avg_total_s);
        row.throughput = throughput(row.matches, row.avg_total_s);
        rows.push_back(row);
    }
    return rows;
}

// File-backed variant. Both files are loaded up front so file I/O stays
// outside every timed region.
inline std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
    const PatternFile dictionary = load_patterns(config.pattern_path);
    const std::string input = load_input(config.input_path);
    return run_benchmark(dictionary.patterns, input, config);
}

// Scalability sweep over input sizes with a fixed dictionary. One corpus is
// generated at the largest requested size and each smaller size is scanned
// as a prefix of it, so successive corpora are prefix-extensions and match
// counts are non-decreasing in input size.
inline std::vector<BenchRow> sweep_file_sizes(const BenchConfig& base,
                                              const std::vector<std::size_t>& sizes,
                                              const CorpusSpec& corpus) {
    if (sizes.empty()) throw Error("sizes must not be empty");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw Error("sizes must be strictly increasing");

    CorpusSpec spec = corpus;
    spec.input_bytes = std::max(corpus.input_bytes, sizes.back());
    const Corpus generated = generate_corpus(spec);

    std::vector<BenchRow> rows;
    for (const std::size_t size : sizes) {
        const std::string_view prefix(generated.input.data(), size);
        const std::vector<BenchRow> batch = run_benchmark(generated.patterns, prefix, base);
        rows.insert(rows.end(), batch.begin(), batch.end());
    }
    return rows;
}

namespace detail {

inline void append_g9(std::string& line, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    line += buf;
}

}  // namespace detail

// CSV with the fixed header above; integers verbatim, seconds and
// throughput with nine significant digits.
inline void write_csv(const std::vector<BenchRow>& rows, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const BenchRow& r : rows) {
        std::string line;
        line += std::to_string(r.workers);
        line += ',';
        line += std::to_string(r.input_bytes);
        line += ',';
        line += std::to_string(r.dictionary_size);
        line += ',';
        line += std::to_string(r.matches);
        line += ',';
        detail::append_g9(line, r.avg_build_s);
        line += ',';
        detail::append_g9(line, r.avg_scan_s);
        line += ',';
        detail::append_g9(line, r.avg_total_s);
        line += ',';
        detail::append_g9(line, r.stddev_total_s);
        line += ',';
        detail::append_g9(line, r.throughput);
        os << line << '\n';
    }
}

inline void write_csv(const std::vector<BenchRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    write_csv(rows, out);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

// Canned worker-count sweeps named after the machine classes they mirror:
// a single-core part, a plain dual core, a dual core with SMT, and an
// 8-core/16-thread server part. Each sweep doubles up to the machine's
// optimum thread count.
inline std::vector<unsigned> preset_worker_counts(std::string_view name) {
    if (name == "p1" || name == "p1-pentium4") return {1};
    if (name == "p2" || name == "p2-t4500") return {1, 2};
    if (name == "p3" || name == "p3-i3") return {1, 2, 4};
    if (name == "p4" || name == "p4-xeon") return {1, 2, 4, 8, 16};
    throw Error("unknown preset: " + std::string(name));
}

}  // namespace acmatch
