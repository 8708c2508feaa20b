#include "bugdesc/three_dfa.hpp"

#include <stdexcept>
#include <string>

#include "bugdesc/errors.hpp"

namespace bugdesc {

const char* label_name(Label label) {
    switch (label) {
        case Label::Acc: return "Acc";
        case Label::Rej: return "Rej";
        case Label::Dont: return "Dont";
    }
    return "?";
}

Label parse_label(const std::string& name) {
    if (name == "Acc") return Label::Acc;
    if (name == "Rej") return Label::Rej;
    if (name == "Dont") return Label::Dont;
    throw ParseError("unknown label '" + name + "' (expected Acc, Rej, or Dont)");
}

ThreeDfa::ThreeDfa(Alphabet alphabet, StateId initial, std::vector<StateId> transitions,
                   std::vector<Label> labels)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      transitions_(std::move(transitions)),
      labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw std::invalid_argument("automaton needs at least one state");
    if (transitions_.size() != n * alphabet_.size()) {
        throw std::invalid_argument("transition table size does not match states x letters");
    }
    if (initial_ >= n) throw std::invalid_argument("initial state out of range");
    for (StateId t : transitions_) {
        if (t >= n) throw std::invalid_argument("transition target out of range");
    }
}

StateId ThreeDfa::run(const Word& word) const {
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

Dfa ThreeDfa::view(Label which) const {
    return view({which});
}

Dfa ThreeDfa::view(std::initializer_list<Label> which) const {
    std::vector<bool> accepting(num_states(), false);
    for (std::size_t q = 0; q < num_states(); ++q) {
        for (Label l : which) {
            if (labels_[q] == l) accepting[q] = true;
        }
    }
    return Dfa(alphabet_, initial_, transitions_, std::move(accepting));
}

ThreeDfa ThreeDfa::with_labels(std::vector<Label> labels) const {
    if (labels.size() != num_states()) {
        throw std::invalid_argument("label vector size mismatch");
    }
    return ThreeDfa(alphabet_, initial_, transitions_, std::move(labels));
}

bool ThreeDfa::operator==(const ThreeDfa& other) const {
    return alphabet_ == other.alphabet_ && initial_ == other.initial_ &&
           transitions_ == other.transitions_ && labels_ == other.labels_;
}

} // namespace bugdesc
