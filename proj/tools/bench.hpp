// Benchmark driver: runs the pipeline over a directory of fixtures under one
// of the three test-space setups and reports sizes and times.
#pragma once

#include <cstdint>
#include <string>

namespace bugdesc::cli {

struct BenchOptions {
    std::string setup; // "unr", "fdr", or "adr"
    std::string fixtures_dir;
    std::string out_dir;
    std::uint64_t seed = 42;
    std::size_t walks = 1000;
    std::size_t extra_depth = 4;
    std::size_t max_rounds = 10000;
};

/// Each fixture is a subdirectory holding s.aut (valid tests), b.aut (failing
/// tests), and cex.txt (the counterexample word that triggered the hunt).
/// Writes per-fixture artifacts plus report.jsonl and report.txt under
/// out_dir and prints the table. Per-fixture failures land in the report
/// without stopping the batch. Returns 0 when every fixture succeeded.
int run_bench(const BenchOptions& options);

} // namespace bugdesc::cli
