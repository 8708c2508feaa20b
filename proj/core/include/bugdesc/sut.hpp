#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "bugdesc/dfa.hpp"

namespace bugdesc {

/// Result of executing one test sequence on a system under test.
enum class Outcome : std::uint8_t { Passed, Failed, Invalid };

const char* outcome_name(Outcome o);
Outcome parse_outcome(const std::string& name); // throws ParseError

/// A system under test: executes whole test sequences. Implementations must be
/// safe to call from one thread at a time; callers that share a Sut across
/// threads serialize through RepoSut.
class Sut {
public:
    virtual ~Sut() = default;

    virtual const Alphabet& alphabet() const = 0;
    virtual Outcome execute(const Word& word) = 0;

    /// When the valid and failing languages are known as automata (simulated
    /// systems and wrappers around them), returns them so equivalence checks
    /// can be made exact. Others return std::nullopt.
    virtual std::optional<std::pair<Dfa, Dfa>> exact_languages() const { return std::nullopt; }
};

/// In-memory system defined by a pair of automata: `valid` is the language of
/// executable tests, `failing` the language of failing ones. Construction
/// validates that failing ⊆ valid and that failing is extension-closed within
/// valid (once a test fails, every longer valid test still fails).
class SimulatedSut final : public Sut {
public:
    SimulatedSut(Dfa valid, Dfa failing);

    const Alphabet& alphabet() const override { return valid_.alphabet(); }
    Outcome execute(const Word& word) override;
    std::optional<std::pair<Dfa, Dfa>> exact_languages() const override {
        return std::make_pair(valid_, failing_);
    }

    const Dfa& valid() const { return valid_; }
    const Dfa& failing() const { return failing_; }

private:
    Dfa valid_;
    Dfa failing_;
};

/// Delayed-reporting wrapper: extends the alphabet with an `assert` letter
/// that does not advance the wrapped system. A test fails only when at least
/// `delay` asserts occur after some failing prefix; validity is judged on the
/// word with asserts removed. Models harnesses whose failures only surface a
/// few assertions after the cause.
class AdrSut final : public Sut {
public:
    AdrSut(std::shared_ptr<Sut> base, std::size_t delay = 3,
           const std::string& assert_name = "assert");

    const Alphabet& alphabet() const override { return alphabet_; }
    Outcome execute(const Word& word) override;
    std::optional<std::pair<Dfa, Dfa>> exact_languages() const override;

    Letter assert_letter() const { return assert_letter_; }
    std::size_t delay() const { return delay_; }

private:
    std::shared_ptr<Sut> base_;
    std::size_t delay_;
    Alphabet alphabet_;
    Letter assert_letter_;
};

} // namespace bugdesc
