#include "bugdesc/dfa.hpp"

#include <stdexcept>
#include <string>

#include "bugdesc/errors.hpp"

namespace bugdesc {

Dfa::Dfa(Alphabet alphabet, StateId initial, std::vector<StateId> transitions,
         std::vector<bool> accepting)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      transitions_(std::move(transitions)),
      accepting_(std::move(accepting)) {
    const std::size_t n = accepting_.size();
    if (n == 0) throw std::invalid_argument("automaton needs at least one state");
    if (transitions_.size() != n * alphabet_.size()) {
        throw std::invalid_argument("transition table size " + std::to_string(transitions_.size()) +
                                    " does not match " + std::to_string(n) + " states x " +
                                    std::to_string(alphabet_.size()) + " letters");
    }
    if (initial_ >= n) throw std::invalid_argument("initial state out of range");
    for (StateId t : transitions_) {
        if (t >= n) throw std::invalid_argument("transition target out of range");
    }
}

StateId Dfa::run(const Word& word) const {
    StateId state = initial_;
    for (Letter l : word) {
        if (l >= alphabet_.size()) {
            throw AlphabetMismatchError("letter index " + std::to_string(l) +
                                        " outside alphabet of size " +
                                        std::to_string(alphabet_.size()));
        }
        state = next(state, l);
    }
    return state;
}

Dfa Dfa::with_accepting(std::vector<bool> accepting) const {
    if (accepting.size() != num_states()) {
        throw std::invalid_argument("accepting vector size mismatch");
    }
    return Dfa(alphabet_, initial_, transitions_, std::move(accepting));
}

bool Dfa::operator==(const Dfa& other) const {
    return alphabet_ == other.alphabet_ && initial_ == other.initial_ &&
           transitions_ == other.transitions_ && accepting_ == other.accepting_;
}

} // namespace bugdesc
