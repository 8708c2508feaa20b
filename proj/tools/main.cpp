// Command line front end for the bug description pipeline.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"
#include "bugdesc/oracle.hpp"
#include "bugdesc/relabel.hpp"
#include "bugdesc/serialization.hpp"
#include "bugdesc/test_model.hpp"

#include "bench.hpp"
#include "pipeline.hpp"

namespace fs = std::filesystem;
using namespace bugdesc;

namespace {

struct Globals {
    std::uint64_t seed = 42;
    std::size_t max_len = 8;
    std::size_t walks = 1000;
    std::string log_path;
};

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void add_sut_options(CLI::App* cmd, cli::SutSpec& spec) {
    cmd->add_option("--valid", spec.valid_path, "automaton file of executable tests");
    cmd->add_option("--failing", spec.failing_path, "automaton file of failing tests");
    cmd->add_option("--sut-command", spec.command,
                    "external system: command started via sh -c, speaking the line protocol");
    cmd->add_option("--alphabet", spec.letters, "comma-separated letters of the external system")
        ->delimiter(',');
    cmd->add_option("--timeout-ms", spec.timeout_ms, "reply timeout for the external system");
    cmd->add_option("--adr", spec.adr_delay,
                    "wrap the system with an assert letter; failures surface only after this "
                    "many asserts");
}

struct ExplainArgs {
    cli::SutSpec sut;
    std::string capture_path;
    std::string model = "sigma-star";
    std::string kind = "fe";
    std::string repo;
    std::string out;
    std::size_t max_rounds = 10000;
    std::size_t extra_depth = 4;
    bool extension_closed = false;
    bool concurrent = false;
};

cli::PipelineOptions pipeline_options(const ExplainArgs& args, const Globals& globals) {
    cli::PipelineOptions options;
    options.test_model = args.model;
    options.seed = globals.seed;
    options.walks = globals.walks;
    options.max_rounds = args.max_rounds;
    options.concurrent = args.concurrent;
    options.repo_path = args.repo;
    options.transcript_path =
        globals.log_path.empty() ? (fs::path(args.out) / "transcript.jsonl").string()
                                 : globals.log_path;
    options.extract.extension_closed = args.extension_closed;
    options.extract.extra_depth = args.extra_depth;
    return options;
}

void run_and_report(const ExplainArgs& args, const Globals& globals,
                    const std::vector<ExplanationKind>& kinds) {
    fs::create_directories(args.out);
    cli::PipelineOptions options = pipeline_options(args, globals);
    cli::PipelineResult result = [&] {
        if (!args.capture_path.empty()) {
            if (!args.sut.valid_path.empty() || !args.sut.command.empty()) {
                throw std::invalid_argument("give either --capture or a system under test");
            }
            return cli::explain_capture(load_three_dfa(args.capture_path), options, kinds);
        }
        return cli::run_pipeline(args.sut, options, kinds);
    }();
    cli::write_artifacts(result, globals.seed, args.out);
    std::cout << cli::summary_json(result, globals.seed) << "\n";
}

void register_learn(CLI::App& app, const Globals& globals) {
    auto args = std::make_shared<ExplainArgs>();
    auto* cmd = app.add_subcommand("learn", "learn the three-valued capture automaton");
    cmd->fallthrough();
    add_sut_options(cmd, args->sut);
    cmd->add_option("--test-model", args->model,
                    "sigma-star | contains:a,b | ends-with:a | file:path");
    cmd->add_option("--repo", args->repo, "persistent test repository file");
    cmd->add_option("--max-rounds", args->max_rounds, "equivalence round budget");
    cmd->add_flag("--concurrent", args->concurrent,
                  "race per-view equivalence checks; faster but not reproducible");
    cmd->add_option("-o,--out", args->out, "artifact directory")->required();
    cmd->callback([args, &globals] { run_and_report(*args, globals, {}); });
}

void register_explain(CLI::App& app, const Globals& globals) {
    auto args = std::make_shared<ExplainArgs>();
    auto* cmd = app.add_subcommand(
        "explain", "learn (or load) a capture and extract a compact bug description");
    cmd->fallthrough();
    add_sut_options(cmd, args->sut);
    cmd->add_option("--capture", args->capture_path,
                    "skip learning and explain this capture automaton file");
    cmd->add_option("--test-model", args->model,
                    "sigma-star | contains:a,b | ends-with:a | file:path");
    cmd->add_option("--kind", args->kind, "b | fe | efe | edfe | edefe")
        ->capture_default_str();
    cmd->add_option("--repo", args->repo, "persistent test repository file");
    cmd->add_option("--max-rounds", args->max_rounds, "equivalence round budget");
    cmd->add_option("--extra-depth", args->extra_depth, "enumeration depth of the initial sample");
    cmd->add_flag("--extension-closed", args->extension_closed,
                  "close the description under appending letters when the capture allows it");
    cmd->add_flag("--concurrent", args->concurrent,
                  "race per-view equivalence checks; faster but not reproducible");
    cmd->add_option("-o,--out", args->out, "artifact directory")->required();
    cmd->callback([args, &globals] {
        run_and_report(*args, globals, {parse_explanation_kind(args->kind)});
    });
}

void register_relabel(CLI::App& app) {
    auto args = std::make_shared<std::pair<std::string, std::string>>(); // input, output
    auto kind = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand("relabel", "apply a state relabeling to a capture automaton");
    cmd->fallthrough();
    cmd->add_option("input", args->first, "capture automaton file")->required();
    cmd->add_option("--kind", *kind, "efe | ed | edefe")->required();
    cmd->add_option("-o,--output", args->second, "output file (stdout when absent)");
    cmd->callback([args, kind] {
        ThreeDfa capture = canonicalize3(minimize3(load_three_dfa(args->first)));
        ThreeDfa relabeled = [&] {
            if (*kind == "efe") return efe_relabel(capture);
            if (*kind == "ed") return ed_relabel(capture);
            if (*kind == "edefe") return ed_relabel(efe_relabel(capture));
            throw ParseError("unknown relabeling '" + *kind + "' (expected efe, ed, edefe)");
        }();
        write_text(args->second, serialize(relabeled));
    });
}

void register_bench(CLI::App& app, const Globals& globals, int& exit_code) {
    auto args = std::make_shared<cli::BenchOptions>();
    auto* cmd = app.add_subcommand("bench", "run the pipeline over a directory of fixtures");
    cmd->fallthrough();
    cmd->add_option("--setup", args->setup, "unr | fdr | adr")->required();
    cmd->add_option("--fixtures", args->fixtures_dir,
                    "directory of fixtures (each holds s.aut, b.aut, cex.txt)")
        ->required();
    cmd->add_option("--extra-depth", args->extra_depth, "enumeration depth of the initial sample");
    cmd->add_option("--max-rounds", args->max_rounds, "equivalence round budget");
    cmd->add_option("-o,--out", args->out_dir, "report and artifact directory")->required();
    cmd->callback([args, &globals, &exit_code] {
        args->seed = globals.seed;
        args->walks = globals.walks;
        exit_code = cli::run_bench(*args);
    });
}

void register_verify(CLI::App& app, const Globals& globals, int& exit_code) {
    auto* verify = app.add_subcommand(
        "verify", "slow direct checks used to cross-examine pipeline results");
    verify->require_subcommand(1);
    verify->fallthrough();

    struct ClassifyArgs {
        std::string valid, failing, model = "sigma-star";
        std::uint64_t budget = 2'000'000;
    };
    auto cls = std::make_shared<ClassifyArgs>();
    auto* classify = verify->add_subcommand(
        "classify", "label every word up to --max-len straight from the languages");
    classify->fallthrough();
    classify->add_option("--valid", cls->valid, "automaton file of executable tests")->required();
    classify->add_option("--failing", cls->failing, "automaton file of failing tests")->required();
    classify->add_option("--test-model", cls->model, "test model spec");
    classify->add_option("--budget", cls->budget, "maximum number of words to enumerate");
    classify->callback([cls, &globals] {
        Dfa valid = load_dfa(cls->valid);
        Dfa failing = load_dfa(cls->failing);
        TestModel model = parse_test_model_spec(cls->model, valid.alphabet());
        auto labels = oracle::enumerate_classify(model.dfa, valid, failing, globals.max_len,
                                                 cls->budget);
        for (const auto& [word, label] : labels) {
            std::cout << label_name(label);
            if (!word.empty()) std::cout << ' ' << format_word(valid.alphabet(), word);
            std::cout << '\n';
        }
    });

    struct MayPassArgs {
        std::string valid, failing, word;
    };
    auto mp = std::make_shared<MayPassArgs>();
    auto* may_pass = verify->add_subcommand(
        "may-pass", "can this test prefix still avoid failing forever?");
    may_pass->fallthrough();
    may_pass->add_option("--valid", mp->valid, "automaton file of executable tests")->required();
    may_pass->add_option("--failing", mp->failing, "automaton file of failing tests")->required();
    may_pass->add_option("--word", mp->word, "space-separated test prefix")->required();
    may_pass->callback([mp] {
        Dfa valid = load_dfa(mp->valid);
        Dfa failing = load_dfa(mp->failing);
        Word word = parse_word(valid.alphabet(), mp->word);
        std::cout << (oracle::brute_may_pass(valid, failing, word) ? "true" : "false") << "\n";
    });

    struct MinArgs {
        std::string capture, output;
        std::size_t max_states = 4;
    };
    auto mn = std::make_shared<MinArgs>();
    auto* min_consistent = verify->add_subcommand(
        "min-consistent", "exhaustively search the smallest automaton consistent with a capture");
    min_consistent->fallthrough();
    min_consistent->add_option("--capture", mn->capture, "capture automaton file")->required();
    min_consistent->add_option("--max-states", mn->max_states, "search bound");
    min_consistent->add_option("-o,--output", mn->output, "write the found automaton here");
    min_consistent->callback([mn] {
        ThreeDfa capture = canonicalize3(minimize3(load_three_dfa(mn->capture)));
        auto found = oracle::exhaustive_min_consistent(capture, mn->max_states);
        if (!found) {
            std::cout << "none\n";
            return;
        }
        std::cout << "states: " << found->num_states() << "\n";
        if (!mn->output.empty()) save(*found, mn->output);
    });

    struct ConsistentArgs {
        std::string candidate, capture, kind;
    };
    auto cn = std::make_shared<ConsistentArgs>();
    auto* consistent = verify->add_subcommand(
        "consistent", "check a candidate description against a capture, exactly");
    consistent->fallthrough();
    consistent->add_option("--candidate", cn->candidate, "description automaton file")->required();
    consistent->add_option("--capture", cn->capture, "capture automaton file")->required();
    consistent->add_option("--kind", cn->kind, "b | fe | efe | edfe | edefe")->required();
    consistent->callback([cn, &exit_code] {
        ExplanationKind kind = parse_explanation_kind(cn->kind);
        Dfa candidate = load_dfa(cn->candidate);
        ThreeDfa capture = canonicalize3(minimize3(load_three_dfa(cn->capture)));
        ThreeDfa relabeled = relabel_for(kind, capture);
        auto violation = check_consistency(candidate, relabeled, kind);
        if (violation) {
            std::cout << "violation: " << format_word(candidate.alphabet(), *violation) << "\n";
            exit_code = 1;
        } else {
            std::cout << "consistent\n";
        }
    });
}

void register_export_dot(CLI::App& app) {
    auto args = std::make_shared<std::pair<std::string, std::string>>(); // input, output
    auto* cmd = app.add_subcommand("export-dot", "render an automaton file as Graphviz DOT");
    cmd->fallthrough();
    cmd->add_option("input", args->first, "automaton file")->required();
    cmd->add_option("-o,--output", args->second, "output file (stdout when absent)");
    cmd->callback([args] {
        auto automaton = load_automaton(args->first);
        std::string dot = std::holds_alternative<Dfa>(automaton)
                              ? to_dot(std::get<Dfa>(automaton))
                              : to_dot(std::get<ThreeDfa>(automaton));
        write_text(args->second, dot);
    });
}

void register_serve(CLI::App& app) {
    auto spec = std::make_shared<cli::SutSpec>();
    auto* cmd = app.add_subcommand(
        "serve", "answer the line protocol on stdin/stdout for a simulated system");
    cmd->fallthrough();
    add_sut_options(cmd, *spec);
    cmd->callback([spec] {
        std::shared_ptr<Sut> sut = cli::build_sut(*spec);
        std::string line;
        while (std::getline(std::cin, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line == "RESET") {
                std::cout << "OK\n" << std::flush;
                continue;
            }
            if (line.rfind("RUN", 0) == 0 && (line.size() == 3 || line[3] == ' ')) {
                try {
                    Word word = parse_word(sut->alphabet(),
                                           line.size() > 3 ? line.substr(4) : std::string());
                    std::cout << outcome_name(sut->execute(word)) << "\n" << std::flush;
                } catch (const AlphabetMismatchError& e) {
                    std::cout << "ERR " << e.what() << "\n" << std::flush;
                }
                continue;
            }
            std::cout << "ERR unknown command\n" << std::flush;
        }
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"learns which test sequences of a system fail and derives compact automata "
                 "describing the bug"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "plain key=value file; command line flags win");

    Globals globals;
    int exit_code = 0;
    app.add_option("--seed", globals.seed, "seed for randomized equivalence search")
        ->capture_default_str();
    app.add_option("--max-len", globals.max_len, "word length bound for verify classify")
        ->capture_default_str();
    app.add_option("--walks", globals.walks, "random walks per view in equivalence search")
        ->capture_default_str();
    app.add_option("--log", globals.log_path, "learning transcript JSONL path");

    register_learn(app, globals);
    register_explain(app, globals);
    register_relabel(app);
    register_bench(app, globals, exit_code);
    register_verify(app, globals, exit_code);
    register_export_dot(app);
    register_serve(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const TransportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const AlphabetMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConflictError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
