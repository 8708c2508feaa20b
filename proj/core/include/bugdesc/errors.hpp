#pragma once

#include <stdexcept>
#include <string>

namespace bugdesc {

/// Malformed automaton/repo/config text. `where` carries "file:line" when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what) {}
};

/// A word or operation mixes letters/automata over different alphabets.
class AlphabetMismatchError : public std::runtime_error {
public:
    explicit AlphabetMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured iteration/word budget was exhausted before completion.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken pipe, timeout, process death, or malformed reply from an external system under test.
class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

/// Contradictory data: re-recording a word with a different outcome, or a word
/// appearing both as positive and negative in a learning sample.
class ConflictError : public std::runtime_error {
public:
    explicit ConflictError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bugdesc
