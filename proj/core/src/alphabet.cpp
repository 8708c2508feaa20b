#include "bugdesc/alphabet.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "bugdesc/errors.hpp"

namespace bugdesc {

namespace {

bool valid_letter_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '=') return false;
    }
    return true;
}

} // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("alphabet must not be empty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!valid_letter_name(names_[i])) {
            throw std::invalid_argument("invalid letter name '" + names_[i] +
                                        "' (must be non-empty, no whitespace, no '=')");
        }
        auto [_, inserted] = index_.emplace(names_[i], static_cast<Letter>(i));
        if (!inserted) throw std::invalid_argument("duplicate letter name '" + names_[i] + "'");
    }
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::letter(const std::string& name) const {
    auto l = find(name);
    if (!l) throw AlphabetMismatchError("letter '" + name + "' is not in the alphabet");
    return *l;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0) out += ' ';
        out += alphabet.name(word[i]);
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, const std::string& text) {
    Word word;
    std::istringstream in(text);
    std::string token;
    while (in >> token) word.push_back(alphabet.letter(token));
    return word;
}

} // namespace bugdesc
