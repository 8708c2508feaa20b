#include "pipeline.hpp"

#include <chrono>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/external_sut.hpp"
#include "bugdesc/lstar.hpp"
#include "bugdesc/serialization.hpp"
#include "bugdesc/teacher.hpp"
#include "bugdesc/test_model.hpp"
#include "bugdesc/test_repo.hpp"

namespace bugdesc::cli {

std::shared_ptr<Sut> build_sut(const SutSpec& spec) {
    std::shared_ptr<Sut> sut;
    if (!spec.command.empty()) {
        if (!spec.valid_path.empty() || !spec.failing_path.empty()) {
            throw std::invalid_argument("give either --sut-command or --valid/--failing, not both");
        }
        if (spec.letters.empty()) {
            throw std::invalid_argument("--sut-command needs --alphabet");
        }
        sut = std::make_shared<ExternalSut>(Alphabet(spec.letters), spec.command, spec.timeout_ms);
    } else {
        if (spec.valid_path.empty() || spec.failing_path.empty()) {
            throw std::invalid_argument("need --valid and --failing automaton files");
        }
        sut = std::make_shared<SimulatedSut>(load_dfa(spec.valid_path),
                                             load_dfa(spec.failing_path));
    }
    if (spec.adr_delay > 0) sut = std::make_shared<AdrSut>(std::move(sut), spec.adr_delay);
    return sut;
}

namespace {

void attach_explanations(PipelineResult& result, const PipelineOptions& options,
                         const std::vector<ExplanationKind>& kinds) {
    for (ExplanationKind kind : kinds) {
        result.explanations.emplace_back(kind,
                                         extract_explanation(result.capture, kind, options.extract));
    }
    result.bug_states = minimize(result.capture.view(Label::Acc)).num_states();
}

} // namespace

PipelineResult run_pipeline(const SutSpec& sut_spec, const PipelineOptions& options,
                            const std::vector<ExplanationKind>& kinds) {
    auto start = std::chrono::steady_clock::now();
    std::shared_ptr<Sut> sut = build_sut(sut_spec);
    TestModel model = parse_test_model_spec(options.test_model, sut->alphabet());
    std::size_t model_states = model.dfa.num_states();
    auto repo = options.repo_path.empty()
                    ? std::make_shared<TestRepo>(sut->alphabet())
                    : std::make_shared<TestRepo>(sut->alphabet(), options.repo_path);
    EquivalenceConfig config;
    config.seed = options.seed;
    config.walks_per_view = options.walks;
    config.concurrent_views = options.concurrent;
    Transcript transcript = options.transcript_path.empty()
                                ? Transcript()
                                : Transcript(options.transcript_path);
    Teacher teacher(std::move(model), std::move(sut), std::move(repo), config,
                    std::move(transcript));

    PipelineResult result{learn(teacher, options.max_rounds)};
    result.test_model_states = model_states;
    attach_explanations(result, options, kinds);
    result.membership_queries = teacher.membership_queries();
    result.equivalence_queries = teacher.equivalence_queries();
    result.sut_executions = teacher.sut_executions();
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now()
                                                               - start)
                         .count();
    return result;
}

PipelineResult explain_capture(const ThreeDfa& capture, const PipelineOptions& options,
                               const std::vector<ExplanationKind>& kinds) {
    auto start = std::chrono::steady_clock::now();
    PipelineResult result{canonicalize3(minimize3(capture))};
    attach_explanations(result, options, kinds);
    result.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now()
                                                               - start)
                         .count();
    return result;
}

std::string kind_key(ExplanationKind kind) {
    std::string key = explanation_kind_name(kind);
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return key;
}

std::string summary_json(const PipelineResult& result, std::uint64_t seed) {
    nlohmann::ordered_json summary;
    summary["seed"] = seed;
    summary["three_dfa_states"] = result.capture.num_states();
    summary["b_states"] = result.bug_states;
    nlohmann::ordered_json sizes = nlohmann::ordered_json::object();
    for (const auto& [kind, extraction] : result.explanations) {
        sizes[kind_key(kind)] = extraction.dfa.num_states();
    }
    summary["explanations"] = sizes;
    summary["membership_queries"] = result.membership_queries;
    summary["equivalence_queries"] = result.equivalence_queries;
    summary["sut_executions"] = result.sut_executions;
    summary["wall_ms"] = result.wall_ms;
    return summary.dump();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

} // namespace

void write_artifacts(const PipelineResult& result, std::uint64_t seed, const std::string& dir) {
    std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    write_file(base / "capture.aut", serialize(result.capture));
    write_file(base / "capture.dot", to_dot(result.capture));
    for (const auto& [kind, extraction] : result.explanations) {
        write_file(base / (kind_key(kind) + ".aut"), serialize(extraction.dfa));
        write_file(base / (kind_key(kind) + ".dot"), to_dot(extraction.dfa));
    }
    write_file(base / "summary.json", summary_json(result, seed) + "\n");
}

} // namespace bugdesc::cli
