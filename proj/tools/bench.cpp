#include "bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bugdesc/errors.hpp"
#include "bugdesc/serialization.hpp"
#include "pipeline.hpp"

namespace fs = std::filesystem;

namespace bugdesc::cli {
namespace {

struct SetupPlan {
    std::vector<ExplanationKind> kinds;
    std::size_t adr_delay = 0;
    bool report_model_size = false;
};

SetupPlan plan_for(const std::string& setup) {
    if (setup == "unr") return {{ExplanationKind::FE, ExplanationKind::B}, 0, false};
    if (setup == "fdr") {
        return {{ExplanationKind::FE, ExplanationKind::EDFE, ExplanationKind::B}, 0, true};
    }
    if (setup == "adr") {
        return {{ExplanationKind::FE, ExplanationKind::EFE, ExplanationKind::B}, 3, true};
    }
    throw std::invalid_argument("unknown setup '" + setup + "' (expected unr, fdr, adr)");
}

std::string model_spec_for(const std::string& setup, const Alphabet& alphabet, const Word& cex) {
    if (setup == "adr") return "ends-with:assert";
    if (setup == "fdr" && !cex.empty()) {
        std::string spec = "contains:";
        std::set<Letter> seen;
        for (Letter l : cex) {
            if (!seen.insert(l).second) continue;
            if (seen.size() > 1) spec += ',';
            spec += alphabet.name(l);
        }
        return spec;
    }
    return "sigma-star";
}

Word read_cex(const fs::path& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::string line;
    std::getline(in, line);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return parse_word(alphabet, line);
}

std::string format_ms(double ms) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.1f", ms);
    return buffer;
}

/// Success rows are padded into a grid; error rows render as a raw line so a
/// long message does not blow up the column widths.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::variant<std::vector<std::string>,
                                                        std::string>>& lines) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& line : lines) {
        if (const auto* cells = std::get_if<std::vector<std::string>>(&line)) {
            for (std::size_t c = 0; c < cells->size(); ++c) {
                widths[c] = std::max(widths[c], (*cells)[c].size());
            }
        }
    }
    auto emit_row = [&](std::string& out, const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += cells[c];
            if (c + 1 < cells.size()) out.append(widths[c] - cells[c].size() + 2, ' ');
        }
        out += '\n';
    };
    std::string out;
    emit_row(out, header);
    for (const auto& line : lines) {
        if (const auto* cells = std::get_if<std::vector<std::string>>(&line)) {
            emit_row(out, *cells);
        } else {
            out += std::get<std::string>(line);
            out += '\n';
        }
    }
    return out;
}

} // namespace

int run_bench(const BenchOptions& options) {
    SetupPlan plan = plan_for(options.setup);
    fs::path fixtures(options.fixtures_dir);
    if (!fs::is_directory(fixtures)) {
        throw std::invalid_argument("fixture directory '" + options.fixtures_dir
                                    + "' does not exist");
    }
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
        if (entry.is_directory()) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
    fs::create_directories(options.out_dir);

    std::vector<std::string> header{"fixture", "cex_len", "alphabet"};
    if (plan.report_model_size) header.push_back("model");
    header.push_back("capture");
    for (ExplanationKind kind : plan.kinds) header.push_back(kind_key(kind));
    header.push_back("time_ms");

    std::vector<nlohmann::ordered_json> rows;
    std::vector<std::variant<std::vector<std::string>, std::string>> lines;
    bool any_error = false;
    for (const fs::path& dir : dirs) {
        std::string name = dir.filename().string();
        nlohmann::ordered_json row;
        row["fixture"] = name;
        row["setup"] = options.setup;
        try {
            Dfa valid = load_dfa((dir / "s.aut").string());
            Word cex = read_cex(dir / "cex.txt", valid.alphabet());
            row["cex_len"] = cex.size();
            row["alphabet"] = valid.alphabet().size();

            SutSpec sut;
            sut.valid_path = (dir / "s.aut").string();
            sut.failing_path = (dir / "b.aut").string();
            sut.adr_delay = plan.adr_delay;

            fs::path artifact_dir = fs::path(options.out_dir) / name;
            fs::create_directories(artifact_dir);

            PipelineOptions popts;
            popts.test_model = model_spec_for(options.setup, valid.alphabet(), cex);
            popts.seed = options.seed;
            popts.walks = options.walks;
            popts.max_rounds = options.max_rounds;
            popts.extract.extra_depth = options.extra_depth;
            popts.transcript_path = (artifact_dir / "transcript.jsonl").string();

            PipelineResult result = run_pipeline(sut, popts, plan.kinds);
            write_artifacts(result, options.seed, artifact_dir.string());

            if (plan.report_model_size) row["test_model_states"] = result.test_model_states;
            row["three_dfa_states"] = result.capture.num_states();
            nlohmann::ordered_json sizes = nlohmann::ordered_json::object();
            for (const auto& [kind, extraction] : result.explanations) {
                sizes[kind_key(kind)] = extraction.dfa.num_states();
            }
            row["explanations"] = sizes;
            row["b_states"] = result.bug_states;
            row["membership_queries"] = result.membership_queries;
            row["equivalence_queries"] = result.equivalence_queries;
            row["sut_executions"] = result.sut_executions;
            row["wall_ms"] = result.wall_ms;

            std::vector<std::string> cells{name, std::to_string(cex.size()),
                                           std::to_string(valid.alphabet().size())};
            if (plan.report_model_size) cells.push_back(std::to_string(result.test_model_states));
            cells.push_back(std::to_string(result.capture.num_states()));
            for (const auto& [kind, extraction] : result.explanations) {
                cells.push_back(std::to_string(extraction.dfa.num_states()));
            }
            cells.push_back(format_ms(result.wall_ms));
            lines.emplace_back(std::move(cells));
        } catch (const std::exception& e) {
            row["error"] = e.what();
            any_error = true;
            lines.emplace_back(name + "  error: " + e.what());
        }
        rows.push_back(std::move(row));
    }

    std::ofstream jsonl(fs::path(options.out_dir) / "report.jsonl");
    for (const auto& row : rows) jsonl << row.dump() << "\n";
    std::string table = render_table(header, lines);
    std::ofstream txt(fs::path(options.out_dir) / "report.txt");
    txt << table;
    std::cout << table;
    return any_error ? 1 : 0;
}

} // namespace bugdesc::cli
