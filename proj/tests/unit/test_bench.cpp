#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "acmatch/bench.hpp"
#include "support/oracle.hpp"
#include "support/tmpdir.hpp"

using acmatch::BenchConfig;
using acmatch::BenchRow;
using acmatch::CorpusSpec;
using testsupport::make_patterns;
using testsupport::naive_find_all;

namespace {

BenchConfig quick_config(std::vector<unsigned> workers, unsigned repeats = 2) {
    BenchConfig config;
    config.worker_counts = std::move(workers);
    config.repeats = repeats;
    config.warmup = 1;
    return config;
}

void expect_eq1_consistency(const std::vector<BenchRow>& rows) {
    for (const BenchRow& row : rows) {
        const double product = row.throughput * row.avg_total_s;
        const double tolerance = 1e-9 * std::max<double>(1.0, static_cast<double>(row.matches));
        EXPECT_NEAR(product, static_cast<double>(row.matches), tolerance);
    }
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST(Throughput, MatchesPerSecond) {
    EXPECT_DOUBLE_EQ(acmatch::throughput(2'000'000, 0.5), 4'000'000.0);
    EXPECT_DOUBLE_EQ(acmatch::throughput(0, 1.0), 0.0);
}

TEST(Throughput, RejectsNonPositiveTime) {
    EXPECT_THROW(acmatch::throughput(10, 0.0), acmatch::ZeroTimeError);
    EXPECT_THROW(acmatch::throughput(10, -1.0), acmatch::ZeroTimeError);
}

TEST(RunBenchmark, ClassicDictionaryRows) {
    const auto patterns = make_patterns({"HIS", "SHE", "HERS"});
    const auto rows = acmatch::run_benchmark(patterns, "SHERS", quick_config({1, 2}, 3));
    ASSERT_EQ(rows.size(), 2u);
    for (const BenchRow& row : rows) {
        EXPECT_EQ(row.matches, 2u);
        EXPECT_EQ(row.input_bytes, 5u);
        EXPECT_EQ(row.dictionary_size, 3u);
        EXPECT_GT(row.avg_total_s, 0.0);
        EXPECT_GE(row.avg_total_s + 1e-9, row.avg_build_s);
        EXPECT_GE(row.avg_total_s + 1e-9, row.avg_scan_s);
    }
    EXPECT_EQ(rows[0].workers, 1u);
    EXPECT_EQ(rows[1].workers, 2u);
    expect_eq1_consistency(rows);
}

TEST(RunBenchmark, SingleRepeatHasZeroSpread) {
    const auto rows = acmatch::run_benchmark(make_patterns({"AA"}), "AAAA", quick_config({1}, 1));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].matches, 3u);
    EXPECT_DOUBLE_EQ(rows[0].stddev_total_s, 0.0);
}

TEST(RunBenchmark, RowsSortedByWorkersAscending) {
    const auto rows =
        acmatch::run_benchmark(make_patterns({"AB", "BC"}), "ABCABC", quick_config({4, 1, 2}, 1));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].workers, 1u);
    EXPECT_EQ(rows[1].workers, 2u);
    EXPECT_EQ(rows[2].workers, 4u);
}

// The matches column must not depend on the worker count, and the
// throughput must agree with an independently computed occurrence count.
TEST(RunBenchmark, MatchesAreWorkerInvariantAndOracleExact) {
    CorpusSpec spec;
    spec.input_bytes = 1024;
    spec.pattern_count = 30;
    spec.min_len = 2;
    spec.max_len = 5;
    spec.plant_fraction = 1.0;
    spec.seed = 19;
    const auto corpus = acmatch::generate_corpus(spec);

    const auto oracle = naive_find_all(corpus.patterns, corpus.input);
    const auto rows =
        acmatch::run_benchmark(corpus.patterns, corpus.input, quick_config({1, 2, 3}, 2));
    ASSERT_EQ(rows.size(), 3u);
    for (const BenchRow& row : rows) EXPECT_EQ(row.matches, oracle.size());
    expect_eq1_consistency(rows);
}

TEST(RunBenchmark, LoadsFilesOutsideTimedRegions) {
    testsupport::TempDir dir;
    testsupport::spill(dir.file("patterns.txt"), "HIS\nSHE\nHERS\n");
    testsupport::spill(dir.file("input.bin"), "SHERS");

    BenchConfig config = quick_config({1, 2}, 2);
    config.pattern_path = dir.file("patterns.txt").string();
    config.input_path = dir.file("input.bin").string();

    const auto rows = acmatch::run_benchmark(config);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].matches, 2u);
    EXPECT_EQ(rows[1].matches, 2u);
}

TEST(RunBenchmark, ValidatesConfig) {
    const auto patterns = make_patterns({"A"});
    EXPECT_THROW(acmatch::run_benchmark(patterns, "A", quick_config({})), acmatch::Error);
    EXPECT_THROW(acmatch::run_benchmark(patterns, "A", quick_config({0u})),
                 acmatch::InvalidWorkerCountError);
    EXPECT_THROW(acmatch::run_benchmark(patterns, "A", quick_config({1}, 0)), acmatch::Error);
}

TEST(SweepFileSizes, RowCountAndPrefixMonotonicity) {
    CorpusSpec corpus;
    corpus.pattern_count = 40;
    corpus.min_len = 2;
    corpus.max_len = 6;
    corpus.plant_fraction = 1.0;
    corpus.seed = 23;

    const std::vector<std::size_t> sizes = {512, 1024, 2048, 4096};
    const auto rows = acmatch::sweep_file_sizes(quick_config({1, 2}, 2), sizes, corpus);
    ASSERT_EQ(rows.size(), sizes.size() * 2);

    for (std::size_t i = 0; i < sizes.size(); ++i) {
        EXPECT_EQ(rows[2 * i].input_bytes, sizes[i]);
        EXPECT_EQ(rows[2 * i + 1].input_bytes, sizes[i]);
        // Same size, different worker count: identical matches.
        EXPECT_EQ(rows[2 * i].matches, rows[2 * i + 1].matches);
    }
    // Fixed worker count: matches non-decreasing across prefix-extending sizes.
    for (std::size_t i = 1; i < sizes.size(); ++i) {
        EXPECT_LE(rows[2 * (i - 1)].matches, rows[2 * i].matches);
        EXPECT_LE(rows[2 * (i - 1) + 1].matches, rows[2 * i + 1].matches);
    }
    expect_eq1_consistency(rows);
}

TEST(SweepFileSizes, RejectsNonIncreasingSizes) {
    CorpusSpec corpus;
    corpus.pattern_count = 5;
    EXPECT_THROW(acmatch::sweep_file_sizes(quick_config({1}), {1024, 1024}, corpus),
                 acmatch::Error);
    EXPECT_THROW(acmatch::sweep_file_sizes(quick_config({1}), {2048, 1024}, corpus),
                 acmatch::Error);
    EXPECT_THROW(acmatch::sweep_file_sizes(quick_config({1}), {}, corpus), acmatch::Error);
}

// The regime that motivates dictionary partitioning: a dictionary much
// larger than the input makes machine construction, not scanning, the
// dominant cost. Hardware dependent, but with a 1000:1 ratio the margin is
// wide enough to assert.
TEST(RunBenchmark, BuildDominatesForHugeDictionaries) {
    CorpusSpec spec;
    spec.input_bytes = 64 * 1024;
    spec.pattern_count = 50'000;
    spec.min_len = 6;
    spec.max_len = 10;
    spec.plant_fraction = 0.1;
    spec.seed = 29;
    const auto corpus = acmatch::generate_corpus(spec);

    const auto rows = acmatch::run_benchmark(corpus.patterns, corpus.input,
                                             quick_config({1}, 3));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_GT(rows[0].avg_build_s, rows[0].avg_scan_s);
}

TEST(WriteCsv, HeaderOnlyForNoRows) {
    std::ostringstream out;
    acmatch::write_csv({}, out);
    EXPECT_EQ(out.str(), std::string(acmatch::kCsvHeader) + "\n");
}

TEST(WriteCsv, OneLinePerRowPlusHeader) {
    BenchRow row;
    row.workers = 2;
    row.input_bytes = 5;
    row.dictionary_size = 3;
    row.matches = 2;
    row.avg_build_s = 0.001;
    row.avg_scan_s = 0.002;
    row.avg_total_s = 0.0035;
    row.stddev_total_s = 0.0001;
    row.throughput = 571.4285714;

    std::ostringstream out;
    acmatch::write_csv({row, row}, out);
    const auto lines = split_lines(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], acmatch::kCsvHeader);
    EXPECT_EQ(lines[1], lines[2]);
    EXPECT_EQ(lines[1].substr(0, 8), "2,5,3,2,");
}

TEST(WriteCsv, RoundTripsThroughParsing) {
    const auto patterns = make_patterns({"HIS", "SHE", "HERS"});
    const auto rows = acmatch::run_benchmark(patterns, "SHERS", quick_config({1, 2}, 2));

    testsupport::TempDir dir;
    acmatch::write_csv(rows, dir.file("report.csv"));
    const auto lines = split_lines(testsupport::slurp(dir.file("report.csv")));
    ASSERT_EQ(lines.size(), rows.size() + 1);
    EXPECT_EQ(lines[0], acmatch::kCsvHeader);

    for (std::size_t i = 0; i < rows.size(); ++i) {
        unsigned workers = 0;
        unsigned long long input_bytes = 0, dictionary_size = 0, matches = 0;
        double build = 0, scanned = 0, total = 0, spread = 0, rate = 0;
        ASSERT_EQ(std::sscanf(lines[i + 1].c_str(), "%u,%llu,%llu,%llu,%lf,%lf,%lf,%lf,%lf",
                              &workers, &input_bytes, &dictionary_size, &matches, &build,
                              &scanned, &total, &spread, &rate),
                  9);
        EXPECT_EQ(workers, rows[i].workers);
        EXPECT_EQ(input_bytes, rows[i].input_bytes);
        EXPECT_EQ(dictionary_size, rows[i].dictionary_size);
        EXPECT_EQ(matches, rows[i].matches);
        EXPECT_NEAR(total, rows[i].avg_total_s, 1e-8 * std::abs(rows[i].avg_total_s) + 1e-15);
        EXPECT_NEAR(rate, rows[i].throughput, 1e-8 * std::abs(rows[i].throughput) + 1e-15);
    }
}

TEST(Presets, TableOfWorkerCountSweeps) {
    EXPECT_EQ(acmatch::preset_worker_counts("p1"), (std::vector<unsigned>{1}));
    EXPECT_EQ(acmatch::preset_worker_counts("p2-t4500"), (std::vector<unsigned>{1, 2}));
    EXPECT_EQ(acmatch::preset_worker_counts("p3-i3"), (std::vector<unsigned>{1, 2, 4}));
    EXPECT_EQ(acmatch::preset_worker_counts("p4-xeon"),
              (std::vector<unsigned>{1, 2, 4, 8, 16}));
    EXPECT_THROW(acmatch::preset_worker_counts("p5"), acmatch::Error);
}
