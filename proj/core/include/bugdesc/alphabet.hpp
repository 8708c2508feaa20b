#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bugdesc {

/// Index of a letter within its Alphabet. Words are sequences of these indices;
/// they are only meaningful together with the alphabet they were built against.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Ordered finite set of letters. The order is fixed at construction and is the
/// tie-breaking order used by every deterministic search in the library.
class Alphabet {
public:
    /// Names must be non-empty, unique, and free of whitespace and '='
    /// (the serialization formats use both as separators).
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Letter l) const { return names_.at(l); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<Letter> find(const std::string& name) const;
    /// Like find(), but throws AlphabetMismatchError for unknown names.
    Letter letter(const std::string& name) const;

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Letter> index_;
};

/// Renders a word as space-separated letter names ("" for the empty word).
std::string format_word(const Alphabet& alphabet, const Word& word);

/// Parses a space-separated list of letter names; unknown names throw
/// AlphabetMismatchError. The empty/blank string is the empty word.
Word parse_word(const Alphabet& alphabet, const std::string& text);

} // namespace bugdesc
