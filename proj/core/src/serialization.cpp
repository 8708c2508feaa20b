#include "bugdesc/serialization.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"

namespace bugdesc {

namespace {

constexpr StateId kNone = static_cast<StateId>(-1);

struct RawAutomaton {
    std::vector<std::string> alphabet;
    std::string initial;
    bool three_valued = false;
    std::vector<std::pair<std::string, std::string>> labels; // state -> label name
    std::vector<std::string> accepting;
    // (line, from, letter, to)
    std::vector<std::tuple<int, std::string, std::string, std::string>> transitions;
};

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

RawAutomaton read_raw(std::istream& in, const std::string& source) {
    RawAutomaton raw;
    bool saw_alphabet = false, saw_initial = false, saw_acceptance = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto where = source + ":" + std::to_string(line_no);
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto toks = tokens_of(line);
        if (toks.empty()) continue;

        if (toks[0] == "alphabet:") {
            if (saw_alphabet) throw ParseError(where, "duplicate alphabet line");
            raw.alphabet.assign(toks.begin() + 1, toks.end());
            saw_alphabet = true;
        } else if (toks[0] == "initial:") {
            if (!saw_alphabet) throw ParseError(where, "initial line before alphabet line");
            if (saw_initial) throw ParseError(where, "duplicate initial line");
            if (toks.size() != 2) throw ParseError(where, "expected exactly one initial state");
            raw.initial = toks[1];
            saw_initial = true;
        } else if (toks[0] == "accepting:") {
            if (!saw_initial) throw ParseError(where, "accepting line before initial line");
            if (saw_acceptance) throw ParseError(where, "duplicate accepting/labels line");
            raw.accepting.assign(toks.begin() + 1, toks.end());
            raw.three_valued = false;
            saw_acceptance = true;
        } else if (toks[0] == "labels:") {
            if (!saw_initial) throw ParseError(where, "labels line before initial line");
            if (saw_acceptance) throw ParseError(where, "duplicate accepting/labels line");
            for (std::size_t i = 1; i < toks.size(); ++i) {
                const auto eq = toks[i].find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].size()) {
                    throw ParseError(where, "expected state=Label, got '" + toks[i] + "'");
                }
                raw.labels.emplace_back(toks[i].substr(0, eq), toks[i].substr(eq + 1));
            }
            raw.three_valued = true;
            saw_acceptance = true;
        } else {
            if (!saw_acceptance) {
                throw ParseError(where, "transition before alphabet/initial/accepting headers");
            }
            if (toks.size() != 4 || toks[2] != "->") {
                throw ParseError(where, "expected '<state> <letter> -> <state>'");
            }
            raw.transitions.emplace_back(line_no, toks[0], toks[1], toks[3]);
        }
    }
    if (!saw_alphabet) throw ParseError(source, "missing alphabet line");
    if (!saw_initial) throw ParseError(source, "missing initial line");
    if (!saw_acceptance) throw ParseError(source, "missing accepting/labels line");
    return raw;
}

struct Assembled {
    Alphabet alphabet;
    StateId initial;
    std::vector<StateId> transitions;
    std::size_t num_states;
    std::map<std::string, StateId> state_ids;
};

Assembled assemble(const RawAutomaton& raw, const std::string& source,
                   const ParseOptions& options,
                   const std::vector<std::string>& extra_states) {
    Alphabet alphabet = [&] {
        try {
            return Alphabet(raw.alphabet);
        } catch (const std::invalid_argument& e) {
            throw ParseError(source, e.what());
        }
    }();

    std::map<std::string, StateId> ids;
    std::vector<std::string> names;
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = ids.emplace(name, static_cast<StateId>(names.size()));
        if (inserted) names.push_back(name);
        return it->second;
    };
    intern(raw.initial);
    for (const auto& name : extra_states) intern(name);
    for (const auto& [line, from, letter, to] : raw.transitions) {
        (void)line;
        (void)letter;
        intern(from);
        intern(to);
    }

    const std::size_t k = alphabet.size();
    std::vector<StateId> table(names.size() * k, kNone);
    for (const auto& [line, from, letter, to] : raw.transitions) {
        const auto where = source + ":" + std::to_string(line);
        const auto l = alphabet.find(letter);
        if (!l) throw ParseError(where, "unknown letter '" + letter + "' in transition");
        StateId& slot = table[ids[from] * k + *l];
        if (slot != kNone) {
            throw ParseError(where, "duplicate transition for state '" + from + "' on letter '" +
                                        letter + "'");
        }
        slot = ids[to];
    }

    // Complete the table: either report the first hole or add an implicit sink.
    StateId sink = kNone;
    for (std::size_t q = 0; q < names.size(); ++q) {
        for (std::size_t l = 0; l < k; ++l) {
            if (table[q * k + l] != kNone) continue;
            if (options.require_total) {
                throw ParseError(source, "missing transition for state '" + names[q] +
                                             "' on letter '" + alphabet.name(static_cast<Letter>(l)) +
                                             "'");
            }
            if (sink == kNone) {
                sink = static_cast<StateId>(names.size());
                names.push_back("@sink");
                table.resize(names.size() * k, kNone);
                for (std::size_t sl = 0; sl < k; ++sl) table[sink * k + sl] = sink;
            }
            table[q * k + l] = sink;
        }
    }

    return Assembled{std::move(alphabet), ids.at(raw.initial), std::move(table), names.size(),
                     std::move(ids)};
}

Dfa finish_dfa(const RawAutomaton& raw, const std::string& source, const ParseOptions& options) {
    if (raw.three_valued) throw ParseError(source, "expected a two-valued automaton (accepting:)");
    Assembled a = assemble(raw, source, options, raw.accepting);
    std::vector<bool> accepting(a.num_states, false);
    for (const auto& name : raw.accepting) accepting[a.state_ids.at(name)] = true;
    return canonicalize(Dfa(std::move(a.alphabet), a.initial, std::move(a.transitions),
                            std::move(accepting)));
}

ThreeDfa finish_three_dfa(const RawAutomaton& raw, const std::string& source,
                          const ParseOptions& options) {
    if (!raw.three_valued) throw ParseError(source, "expected a three-valued automaton (labels:)");
    std::vector<std::string> label_states;
    label_states.reserve(raw.labels.size());
    for (const auto& [state, _] : raw.labels) label_states.push_back(state);
    Assembled a = assemble(raw, source, options, label_states);
    std::vector<Label> labels(a.num_states, Label::Dont);
    std::vector<bool> labelled(a.num_states, false);
    for (const auto& [state, label] : raw.labels) {
        const StateId q = a.state_ids.at(state);
        const Label parsed = [&] {
            try {
                return parse_label(label);
            } catch (const ParseError& e) {
                throw ParseError(source, e.what());
            }
        }();
        if (labelled[q] && labels[q] != parsed) {
            throw ParseError(source, "conflicting labels for state '" + state + "'");
        }
        labels[q] = parsed;
        labelled[q] = true;
    }
    return canonicalize3(ThreeDfa(std::move(a.alphabet), a.initial, std::move(a.transitions),
                                  std::move(labels)));
}

void write_header(std::ostream& out, const Alphabet& alphabet, StateId initial) {
    out << "alphabet:";
    for (const auto& name : alphabet.names()) out << ' ' << name;
    out << "\ninitial: s" << initial << "\n";
}

void write_transitions(std::ostream& out, const Alphabet& alphabet,
                       const std::vector<StateId>& transitions, std::size_t num_states) {
    const std::size_t k = alphabet.size();
    for (std::size_t q = 0; q < num_states; ++q) {
        for (std::size_t l = 0; l < k; ++l) {
            out << 's' << q << ' ' << alphabet.name(static_cast<Letter>(l)) << " -> s"
                << transitions[q * k + l] << "\n";
        }
    }
}

} // namespace

Dfa parse_dfa(std::istream& in, const std::string& source_name, ParseOptions options) {
    return finish_dfa(read_raw(in, source_name), source_name, options);
}

Dfa parse_dfa(const std::string& text, const std::string& source_name, ParseOptions options) {
    std::istringstream in(text);
    return parse_dfa(in, source_name, options);
}

std::variant<Dfa, ThreeDfa> parse_automaton(const std::string& text,
                                            const std::string& source_name,
                                            ParseOptions options) {
    std::istringstream in(text);
    return parse_automaton(in, source_name, options);
}

ThreeDfa parse_three_dfa(std::istream& in, const std::string& source_name, ParseOptions options) {
    return finish_three_dfa(read_raw(in, source_name), source_name, options);
}

ThreeDfa parse_three_dfa(const std::string& text, const std::string& source_name,
                         ParseOptions options) {
    std::istringstream in(text);
    return parse_three_dfa(in, source_name, options);
}

std::variant<Dfa, ThreeDfa> parse_automaton(std::istream& in, const std::string& source_name,
                                            ParseOptions options) {
    RawAutomaton raw = read_raw(in, source_name);
    if (raw.three_valued) return finish_three_dfa(raw, source_name, options);
    return finish_dfa(raw, source_name, options);
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    return in;
}

} // namespace

Dfa load_dfa(const std::string& path, ParseOptions options) {
    auto in = open_or_throw(path);
    return parse_dfa(in, path, options);
}

ThreeDfa load_three_dfa(const std::string& path, ParseOptions options) {
    auto in = open_or_throw(path);
    return parse_three_dfa(in, path, options);
}

std::variant<Dfa, ThreeDfa> load_automaton(const std::string& path, ParseOptions options) {
    auto in = open_or_throw(path);
    return parse_automaton(in, path, options);
}

std::string serialize(const Dfa& dfa) {
    const Dfa c = canonicalize(dfa);
    std::ostringstream out;
    write_header(out, c.alphabet(), c.initial());
    out << "accepting:";
    for (std::size_t q = 0; q < c.num_states(); ++q) {
        if (c.accepting(static_cast<StateId>(q))) out << " s" << q;
    }
    out << "\n";
    write_transitions(out, c.alphabet(), c.transitions(), c.num_states());
    return out.str();
}

std::string serialize(const ThreeDfa& dfa) {
    const ThreeDfa c = canonicalize3(dfa);
    std::ostringstream out;
    write_header(out, c.alphabet(), c.initial());
    out << "labels:";
    for (std::size_t q = 0; q < c.num_states(); ++q) {
        out << " s" << q << '=' << label_name(c.label(static_cast<StateId>(q)));
    }
    out << "\n";
    write_transitions(out, c.alphabet(), c.transitions(), c.num_states());
    return out.str();
}

namespace {

void save_text(const std::string& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, "cannot open file for writing");
    out << text;
    if (!out) throw ParseError(path, "write failed");
}

/// Merged edge labels: for each (from, to) pair, the comma-joined letters.
std::map<std::pair<StateId, StateId>, std::string> merged_edges(
    const Alphabet& alphabet, const std::vector<StateId>& transitions, std::size_t num_states) {
    std::map<std::pair<StateId, StateId>, std::string> edges;
    const std::size_t k = alphabet.size();
    for (std::size_t q = 0; q < num_states; ++q) {
        for (std::size_t l = 0; l < k; ++l) {
            const StateId to = transitions[q * k + l];
            auto& label = edges[{static_cast<StateId>(q), to}];
            if (!label.empty()) label += ",";
            label += alphabet.name(static_cast<Letter>(l));
        }
    }
    return edges;
}

} // namespace

void save(const Dfa& dfa, const std::string& path) { save_text(serialize(dfa), path); }
void save(const ThreeDfa& dfa, const std::string& path) { save_text(serialize(dfa), path); }

std::string to_dot(const Dfa& dfa) {
    const Dfa c = canonicalize(dfa);
    std::ostringstream out;
    out << "digraph dfa {\n  rankdir=LR;\n  __start [shape=point, label=\"\"];\n";
    for (std::size_t q = 0; q < c.num_states(); ++q) {
        out << "  s" << q << " [shape=" << (c.accepting(static_cast<StateId>(q)) ? "doublecircle" : "circle")
            << "];\n";
    }
    out << "  __start -> s" << c.initial() << ";\n";
    for (const auto& [edge, label] : merged_edges(c.alphabet(), c.transitions(), c.num_states())) {
        out << "  s" << edge.first << " -> s" << edge.second << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const ThreeDfa& dfa) {
    const ThreeDfa c = canonicalize3(dfa);
    std::ostringstream out;
    out << "digraph three_dfa {\n  rankdir=LR;\n  __start [shape=point, label=\"\"];\n";
    for (std::size_t q = 0; q < c.num_states(); ++q) {
        const Label l = c.label(static_cast<StateId>(q));
        out << "  s" << q << " [shape=" << (l == Label::Acc ? "doublecircle" : "circle")
            << ", label=\"s" << q << "\\n" << label_name(l) << "\"];\n";
    }
    out << "  __start -> s" << c.initial() << ";\n";
    for (const auto& [edge, label] : merged_edges(c.alphabet(), c.transitions(), c.num_states())) {
        out << "  s" << edge.first << " -> s" << edge.second << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace bugdesc
