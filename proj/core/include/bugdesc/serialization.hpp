#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "bugdesc/dfa.hpp"
#include "bugdesc/three_dfa.hpp"

namespace bugdesc {

// Plain-text automaton format (see README for the grammar):
//
//   alphabet: 0 1
//   initial: s0
//   accepting: s2 s3          (Dfa)  -- or --  labels: s0=Dont s1=Acc   (ThreeDfa)
//   s0 0 -> s1
//   ...
//
// '#' starts a comment; blank lines are ignored. State and letter names are
// whitespace-free tokens; state names must not contain '='.

struct ParseOptions {
    /// With the default (false), missing transition rows are completed with an
    /// implicit non-accepting / Dont-labelled sink. With true, a missing row
    /// is a ParseError naming the state and letter.
    bool require_total = false;
};

/// Parsing canonicalizes: the returned automaton is renumbered breadth-first
/// from the initial state and unreachable states are dropped.
Dfa parse_dfa(std::istream& in, const std::string& source_name = "<input>",
              ParseOptions options = {});
Dfa parse_dfa(const std::string& text, const std::string& source_name = "<input>",
              ParseOptions options = {});

ThreeDfa parse_three_dfa(std::istream& in, const std::string& source_name = "<input>",
                         ParseOptions options = {});
ThreeDfa parse_three_dfa(const std::string& text, const std::string& source_name = "<input>",
                         ParseOptions options = {});

/// Detects the variant from the header ("accepting:" vs "labels:").
std::variant<Dfa, ThreeDfa> parse_automaton(std::istream& in,
                                            const std::string& source_name = "<input>",
                                            ParseOptions options = {});
std::variant<Dfa, ThreeDfa> parse_automaton(const std::string& text,
                                            const std::string& source_name = "<input>",
                                            ParseOptions options = {});

Dfa load_dfa(const std::string& path, ParseOptions options = {});
ThreeDfa load_three_dfa(const std::string& path, ParseOptions options = {});
std::variant<Dfa, ThreeDfa> load_automaton(const std::string& path, ParseOptions options = {});

/// Canonical text form; parse(serialize(x)) is structurally identical to
/// canonicalize(x).
std::string serialize(const Dfa& dfa);
std::string serialize(const ThreeDfa& dfa);

void save(const Dfa& dfa, const std::string& path);
void save(const ThreeDfa& dfa, const std::string& path);

/// Graphviz export. Each state is declared exactly once (shape=circle, or
/// doublecircle for accepting states); ThreeDfa states carry their label in
/// the node caption. Parallel edges are merged with comma-joined letters.
std::string to_dot(const Dfa& dfa);
std::string to_dot(const ThreeDfa& dfa);

} // namespace bugdesc
