#pragma once

#include <cstdint>
#include <vector>

#include "bugdesc/alphabet.hpp"

namespace bugdesc {

using StateId = std::uint32_t;

/// Complete deterministic finite automaton. Immutable after construction:
/// every operation that "changes" a Dfa returns a new one, so values can be
/// shared freely across threads.
class Dfa {
public:
    /// `transitions` is row-major: entry [state * |alphabet| + letter].
    /// The table must be total and every target must be a valid state.
    Dfa(Alphabet alphabet, StateId initial, std::vector<StateId> transitions,
        std::vector<bool> accepting);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_states() const { return accepting_.size(); }
    StateId initial() const { return initial_; }

    StateId next(StateId state, Letter letter) const {
        return transitions_[state * alphabet_.size() + letter];
    }
    bool accepting(StateId state) const { return accepting_[state]; }
    const std::vector<bool>& accepting_states() const { return accepting_; }
    const std::vector<StateId>& transitions() const { return transitions_; }

    /// Runs the word from the initial state; letters outside the alphabet
    /// throw AlphabetMismatchError.
    StateId run(const Word& word) const;
    bool accepts(const Word& word) const { return accepting_[run(word)]; }

    /// Same automaton with a different accepting set.
    Dfa with_accepting(std::vector<bool> accepting) const;

    /// Structural identity: same alphabet, numbering, transitions, acceptance.
    bool operator==(const Dfa& other) const;
    bool operator!=(const Dfa& other) const { return !(*this == other); }

private:
    Alphabet alphabet_;
    StateId initial_;
    std::vector<StateId> transitions_;
    std::vector<bool> accepting_;
};

} // namespace bugdesc
