// Shared plumbing for the command line tool: building systems under test,
// running the learn/relabel/extract pipeline, and writing artifacts.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bugdesc/extract.hpp"
#include "bugdesc/sut.hpp"

namespace bugdesc::cli {

/// Where the system under test comes from: a valid/failing automaton pair
/// (simulated in process) or an external command speaking the line protocol.
struct SutSpec {
    std::string valid_path;
    std::string failing_path;
    std::string command;              // exclusive with the automaton pair
    std::vector<std::string> letters; // external systems need their alphabet
    int timeout_ms = 10000;
    std::size_t adr_delay = 0; // wrap with delayed asserts when positive
};

std::shared_ptr<Sut> build_sut(const SutSpec& spec);

struct PipelineOptions {
    std::string test_model = "sigma-star";
    std::uint64_t seed = 42;
    std::size_t walks = 1000;
    std::size_t max_rounds = 10000;
    bool concurrent = false;
    std::string repo_path;       // persist executions here when set
    std::string transcript_path; // JSONL learning log when set
    ExtractOptions extract;
};

struct PipelineResult {
    explicit PipelineResult(ThreeDfa c) : capture(std::move(c)) {}

    ThreeDfa capture;
    std::vector<std::pair<ExplanationKind, Extraction>> explanations;
    std::size_t test_model_states = 0;
    std::size_t bug_states = 0; // minimized failing language, for comparison
    std::size_t membership_queries = 0;
    std::size_t equivalence_queries = 0;
    std::size_t sut_executions = 0;
    double wall_ms = 0.0;
};

/// learn, then relabel and extract once per requested kind. The wall time
/// covers everything from construction of the system to the last extraction.
PipelineResult run_pipeline(const SutSpec& sut, const PipelineOptions& options,
                            const std::vector<ExplanationKind>& kinds);

/// Extraction-only variant of the pipeline on an already learned capture.
PipelineResult explain_capture(const ThreeDfa& capture, const PipelineOptions& options,
                               const std::vector<ExplanationKind>& kinds);

/// File name stem and summary key for a kind: "b", "fe", "efe", ...
std::string kind_key(ExplanationKind kind);

/// One-line JSON summary: sizes, query counts, wall time, seed.
std::string summary_json(const PipelineResult& result, std::uint64_t seed);

/// Writes capture, per-kind explanation text/DOT files, and summary.json
/// under `dir`, creating the directory when needed.
void write_artifacts(const PipelineResult& result, std::uint64_t seed, const std::string& dir);

} // namespace bugdesc::cli
