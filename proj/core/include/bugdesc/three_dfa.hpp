#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "bugdesc/dfa.hpp"

namespace bugdesc {

/// Verdict attached to a word by a three-valued classifier:
///   Acc  - the word is a failing test,
///   Rej  - the word is a passing test,
///   Dont - the word is out of scope (not executable, or outside the test model).
enum class Label : std::uint8_t { Acc, Rej, Dont };

const char* label_name(Label label);
Label parse_label(const std::string& name); // throws ParseError on anything else

/// Complete deterministic automaton whose states carry a three-valued label
/// instead of a boolean acceptance bit. Immutable after construction.
class ThreeDfa {
public:
    ThreeDfa(Alphabet alphabet, StateId initial, std::vector<StateId> transitions,
             std::vector<Label> labels);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return labels_.size(); }
    StateId initial() const { return initial_; }

    StateId next(StateId state, Letter letter) const {
        return transitions_[state * alphabet_.size() + letter];
    }
    Label label(StateId state) const { return labels_[state]; }
    const std::vector<Label>& labels() const { return labels_; }
    const std::vector<StateId>& transitions() const { return transitions_; }

    StateId run(const Word& word) const;
    Label label_of(const Word& word) const { return labels_[run(word)]; }

    /// Boolean view: accepts exactly the words labelled `which`.
    Dfa view(Label which) const;
    /// Boolean view accepting the union of the given label classes.
    Dfa view(std::initializer_list<Label> which) const;

    /// Same automaton with different labels.
    ThreeDfa with_labels(std::vector<Label> labels) const;

    bool operator==(const ThreeDfa& other) const;
    bool operator!=(const ThreeDfa& other) const { return !(*this == other); }

private:
    Alphabet alphabet_;
    StateId initial_;
    std::vector<StateId> transitions_;
    std::vector<Label> labels_;
};

} // namespace bugdesc
