#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acmatch/bench.hpp"
#include "acmatch/corpus.hpp"
#include "acmatch/errors.hpp"
#include "acmatch/io.hpp"
#include "acmatch/partition.hpp"

namespace acmatch {

namespace cli_detail {

struct MatchArgs {
    std::string pattern_path;
    std::string input_path;
    unsigned workers = 1;
    std::string output = "tsv";
};

struct BenchArgs {
    std::string pattern_path;
    std::string input_path;
    std::vector<unsigned> workers;
    std::string preset;
    unsigned repeats = 5;
    unsigned warmup = 1;
    std::uint64_t seed = 0;
    std::string csv_path;
    std::vector<std::size_t> sizes;
    std::size_t gen_patterns = 1000;
    std::size_t gen_min_len = 4;
    std::size_t gen_max_len = 8;
    std::string gen_alphabet = "ACGT";
    double gen_plant = 0.5;
};

struct GenArgs {
    std::size_t size = 0;
    std::size_t patterns = 0;
    std::size_t min_len = 4;
    std::size_t max_len = 8;
    std::string alphabet = "ACGT";
    double plant = 0.5;
    std::uint64_t seed = 0;
    std::string out_input;
    std::string out_patterns;
};

inline int cmd_match(const MatchArgs& args, std::ostream& out) {
    const PatternFile dictionary = load_patterns(args.pattern_path);
    const std::string input = load_input(args.input_path);
    const PartitionedRun run = run_partitioned(dictionary.patterns, input, args.workers);

    if (args.output == "json") {
        nlohmann::json records = nlohmann::json::array();
        for (const MatchRecord& r : run.matches)
            records.push_back({{"end", r.end},
                               {"pattern_id", r.pattern_id},
                               {"pattern", dictionary.patterns[r.pattern_id].bytes}});
        out << records.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    } else {
        for (const MatchRecord& r : run.matches)
            out << r.end << '\t' << r.pattern_id << '\t'
                << dictionary.patterns[r.pattern_id].bytes << '\n';
    }
    return 0;
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    BenchConfig config;
    config.worker_counts = args.preset.empty() ? args.workers : preset_worker_counts(args.preset);
    if (config.worker_counts.empty()) {
        err << "bench requires --workers or --preset\n";
        return 2;
    }
    config.repeats = args.repeats;
    config.warmup = args.warmup;
    config.seed = args.seed;

    std::vector<BenchRow> rows;
    if (!args.sizes.empty()) {
        if (!std::is_sorted(args.sizes.begin(), args.sizes.end()) ||
            std::adjacent_find(args.sizes.begin(), args.sizes.end()) != args.sizes.end()) {
            err << "--sizes must be strictly increasing\n";
            return 2;
        }
        if (args.gen_min_len < 1 || args.gen_min_len > args.gen_max_len) {
            err << "need 1 <= --gen-min-len <= --gen-max-len\n";
            return 2;
        }
        if (args.sizes.front() < args.gen_max_len) {
            err << "smallest size must be >= --gen-max-len\n";
            return 2;
        }
        CorpusSpec corpus;
        corpus.alphabet = args.gen_alphabet;
        corpus.pattern_count = args.gen_patterns;
        corpus.min_len = args.gen_min_len;
        corpus.max_len = args.gen_max_len;
        corpus.plant_fraction = args.gen_plant;
        corpus.seed = args.seed;
        rows = sweep_file_sizes(config, args.sizes, corpus);
    } else {
        if (args.pattern_path.empty() || args.input_path.empty()) {
            err << "bench requires --patterns and --input (or --sizes for a generated sweep)\n";
            return 2;
        }
        config.pattern_path = args.pattern_path;
        config.input_path = args.input_path;
        rows = run_benchmark(config);
    }

    if (args.csv_path.empty())
        write_csv(rows, out);
    else
        write_csv(rows, std::filesystem::path(args.csv_path));
    return 0;
}

inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
    if (args.min_len < 1 || args.min_len > args.max_len) {
        err << "need 1 <= --min-len <= --max-len\n";
        return 2;
    }
    if (args.size < args.max_len) {
        err << "--size must be >= --max-len\n";
        return 2;
    }
    if (args.alphabet.find('\n') != std::string::npos ||
        args.alphabet.find('\r') != std::string::npos) {
        err << "alphabet must not contain newline bytes (one-pattern-per-line format)\n";
        return 2;
    }

    CorpusSpec spec;
    spec.alphabet = args.alphabet;
    spec.input_bytes = args.size;
    spec.pattern_count = args.patterns;
    spec.min_len = args.min_len;
    spec.max_len = args.max_len;
    spec.plant_fraction = args.plant;
    spec.seed = args.seed;

    const Corpus corpus = generate_corpus(spec);
    write_bytes(args.out_input, corpus.input);
    write_pattern_file(args.out_patterns, corpus.patterns);
    out << "input_bytes=" << corpus.input.size() << " patterns=" << corpus.patterns.size()
        << " planted=" << corpus.planted << '\n';
    return 0;
}

}  // namespace cli_detail

// Exit codes: 0 success (including zero matches), 1 runtime failure
// (I/O, dictionary, generation), 2 usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"multi-pattern exact string matching over partitioned dictionaries", "acmatch"};
    app.require_subcommand(1);

    cli_detail::MatchArgs match_args;
    CLI::App* match = app.add_subcommand("match", "scan an input file for dictionary patterns");
    match->add_option("--patterns", match_args.pattern_path, "pattern file, one per line")
        ->required();
    match->add_option("--input", match_args.input_path, "input file (raw bytes)")->required();
    match->add_option("--workers", match_args.workers, "worker count (default 1)")
        ->check(CLI::PositiveNumber);
    match->add_option("--output", match_args.output, "output format (default tsv)")
        ->check(CLI::IsMember({"tsv", "json"}));

    cli_detail::BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "measure matching throughput");
    bench->add_option("--patterns", bench_args.pattern_path, "pattern file, one per line");
    bench->add_option("--input", bench_args.input_path, "input file (raw bytes)");
    auto* workers_opt =
        bench->add_option("--workers", bench_args.workers, "comma-separated worker counts")
            ->delimiter(',')
            ->check(CLI::PositiveNumber);
    bench->add_option("--preset", bench_args.preset, "worker-count sweep preset")
        ->check(CLI::IsMember({"p1", "p1-pentium4", "p2", "p2-t4500", "p3", "p3-i3", "p4",
                               "p4-xeon"}))
        ->excludes(workers_opt);
    bench->add_option("--repeats", bench_args.repeats, "timed runs per worker count (default 5)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--warmup", bench_args.warmup, "untimed runs per worker count (default 1)");
    bench->add_option("--seed", bench_args.seed, "seed for generated sweeps");
    bench->add_option("--csv", bench_args.csv_path, "write the report here instead of stdout");
    bench->add_option("--sizes", bench_args.sizes,
                      "comma-separated input sizes; sweeps a generated corpus instead of --input")
        ->delimiter(',');
    bench->add_option("--gen-patterns", bench_args.gen_patterns,
                      "sweep dictionary size (default 1000)")
        ->check(CLI::PositiveNumber);
    bench->add_option("--gen-min-len", bench_args.gen_min_len, "sweep pattern minimum length")
        ->check(CLI::PositiveNumber);
    bench->add_option("--gen-max-len", bench_args.gen_max_len, "sweep pattern maximum length")
        ->check(CLI::PositiveNumber);
    bench->add_option("--gen-alphabet", bench_args.gen_alphabet, "sweep alphabet (default ACGT)");
    bench->add_option("--gen-plant", bench_args.gen_plant,
                      "fraction of sweep patterns planted into the input")
        ->check(CLI::Range(0.0, 1.0));

    cli_detail::GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic corpus");
    gen->add_option("--size", gen_args.size, "input size in bytes")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--patterns", gen_args.patterns, "number of distinct patterns")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--min-len", gen_args.min_len, "minimum pattern length (default 4)")
        ->check(CLI::PositiveNumber);
    gen->add_option("--max-len", gen_args.max_len, "maximum pattern length (default 8)")
        ->check(CLI::PositiveNumber);
    gen->add_option("--alphabet", gen_args.alphabet, "corpus alphabet (default ACGT)");
    gen->add_option("--plant", gen_args.plant, "fraction of patterns planted (default 0.5)")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_args.seed, "generator seed (default 0)");
    gen->add_option("--out-input", gen_args.out_input, "where to write the input bytes")
        ->required();
    gen->add_option("--out-patterns", gen_args.out_patterns, "where to write the pattern file")
        ->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (match->parsed()) return cli_detail::cmd_match(match_args, out);
        if (bench->parsed()) return cli_detail::cmd_bench(bench_args, out, err);
        if (gen->parsed()) return cli_detail::cmd_gen(gen_args, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace acmatch
