#include "bugdesc/sut.hpp"

#include <deque>
#include <map>
#include <stdexcept>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"

namespace bugdesc {

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Passed: return "PASS";
        case Outcome::Failed: return "FAIL";
        case Outcome::Invalid: return "INVALID";
    }
    return "?";
}

Outcome parse_outcome(const std::string& name) {
    if (name == "PASS") return Outcome::Passed;
    if (name == "FAIL") return Outcome::Failed;
    if (name == "INVALID") return Outcome::Invalid;
    throw ParseError("unknown outcome '" + name + "' (expected PASS, FAIL, or INVALID)");
}

SimulatedSut::SimulatedSut(Dfa valid, Dfa failing)
    : valid_(std::move(valid)), failing_(std::move(failing)) {
    if (valid_.alphabet() != failing_.alphabet()) {
        throw AlphabetMismatchError("valid and failing languages use different alphabets");
    }
    // failing ⊆ valid.
    if (auto witness = equivalent(intersect(failing_, valid_), failing_)) {
        throw std::invalid_argument("failing language is not contained in the valid language (" +
                                    format_word(valid_.alphabet(), *witness) + ")");
    }
    // Extension closure of failing within valid: in the pair graph no
    // failing-accepting state may reach a passing (valid but not failing) one.
    const std::size_t k = valid_.alphabet().size();
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto intern = [&](StateId a, StateId b) {
        auto [it, inserted] =
            index.emplace(std::make_pair(a, b), static_cast<StateId>(pairs.size()));
        if (inserted) pairs.emplace_back(a, b);
        return it->second;
    };
    std::vector<StateId> next;
    intern(valid_.initial(), failing_.initial());
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        const auto [a, b] = pairs[head];
        for (std::size_t l = 0; l < k; ++l) {
            next.push_back(intern(valid_.next(a, static_cast<Letter>(l)),
                                  failing_.next(b, static_cast<Letter>(l))));
        }
    }
    std::vector<bool> seen(pairs.size(), false);
    std::deque<StateId> queue;
    for (StateId p = 0; p < pairs.size(); ++p) {
        if (failing_.accepting(pairs[p].second) && !seen[p]) {
            seen[p] = true;
            queue.push_back(p);
        }
    }
    while (!queue.empty()) {
        const StateId p = queue.front();
        queue.pop_front();
        if (valid_.accepting(pairs[p].first) && !failing_.accepting(pairs[p].second)) {
            throw std::invalid_argument(
                "failing language is not extension-closed within the valid language");
        }
        for (std::size_t l = 0; l < k; ++l) {
            const StateId q = next[p * k + l];
            if (!seen[q]) {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
}

Outcome SimulatedSut::execute(const Word& word) {
    if (!valid_.accepts(word)) return Outcome::Invalid;
    return failing_.accepts(word) ? Outcome::Failed : Outcome::Passed;
}

AdrSut::AdrSut(std::shared_ptr<Sut> base, std::size_t delay, const std::string& assert_name)
    : base_(std::move(base)),
      delay_(delay),
      alphabet_([&] {
          if (!base_) throw std::invalid_argument("AdrSut needs a base system");
          std::vector<std::string> names = base_->alphabet().names();
          if (base_->alphabet().find(assert_name)) {
              throw AlphabetMismatchError("base alphabet already contains '" + assert_name + "'");
          }
          names.push_back(assert_name);
          return Alphabet(std::move(names));
      }()),
      assert_letter_(static_cast<Letter>(alphabet_.size() - 1)) {}

Outcome AdrSut::execute(const Word& word) {
    // Core word: the base letters only. Validity is judged on the full core.
    Word core;
    core.reserve(word.size());
    for (Letter l : word) {
        if (l >= alphabet_.size()) throw AlphabetMismatchError("letter outside the alphabet");
        if (l != assert_letter_) core.push_back(l);
    }
    if (base_->execute(core) == Outcome::Invalid) return Outcome::Invalid;

    // Earliest failing core prefix, then count asserts strictly after it.
    Word prefix;
    std::size_t fail_end = word.size() + 1; // position just after the failing prefix
    if (base_->execute(prefix) == Outcome::Failed) fail_end = 0;
    for (std::size_t i = 0; i < word.size() && fail_end > word.size(); ++i) {
        if (word[i] == assert_letter_) continue;
        prefix.push_back(word[i]);
        if (base_->execute(prefix) == Outcome::Failed) fail_end = i + 1;
    }
    if (fail_end > word.size()) return Outcome::Passed;

    std::size_t asserts_after = 0;
    for (std::size_t i = fail_end; i < word.size(); ++i) {
        if (word[i] == assert_letter_) ++asserts_after;
    }
    return asserts_after >= delay_ ? Outcome::Failed : Outcome::Passed;
}

std::optional<std::pair<Dfa, Dfa>> AdrSut::exact_languages() const {
    const auto base_langs = base_->exact_languages();
    if (!base_langs) return std::nullopt;
    const auto& [valid, failing] = *base_langs;
    const std::size_t kb = valid.alphabet().size();
    const std::size_t k = alphabet_.size();

    // Valid language: the base automaton with a self-loop on assert everywhere.
    auto lift = [&](const Dfa& d) {
        std::vector<StateId> t(d.num_states() * k);
        for (StateId q = 0; q < d.num_states(); ++q) {
            for (std::size_t l = 0; l < kb; ++l) t[q * k + l] = d.next(q, static_cast<Letter>(l));
            t[q * k + assert_letter_] = q;
        }
        return Dfa(alphabet_, d.initial(), std::move(t), d.accepting_states());
    };
    const Dfa valid_adr = lift(valid);

    // Failing language: track the base failing automaton plus a latch that is
    // set when a core prefix first fails, and the number of asserts seen since
    // (capped at the delay). Counter value 0 means not latched; value v >= 1
    // means latched with v - 1 asserts counted so far.
    const Dfa failing_lifted = lift(failing);
    const std::size_t counter_values = delay_ + 2;
    const std::size_t n = failing_lifted.num_states() * counter_values;
    auto pack = [&](StateId q, std::size_t v) {
        return static_cast<StateId>(q * counter_values + v);
    };
    std::vector<StateId> t(n * k);
    std::vector<bool> accepting(n, false);
    for (StateId q = 0; q < failing_lifted.num_states(); ++q) {
        for (std::size_t v = 0; v < counter_values; ++v) {
            accepting[pack(q, v)] = v == counter_values - 1;
            for (std::size_t l = 0; l < k; ++l) {
                const StateId qq = failing_lifted.next(q, static_cast<Letter>(l));
                std::size_t vv;
                if (v == 0) {
                    // Latch the moment the core runs into the failing language.
                    vv = (l != assert_letter_ && failing_lifted.accepting(qq)) ? 1 : 0;
                } else if (l == assert_letter_) {
                    vv = std::min(v + 1, counter_values - 1);
                } else {
                    vv = v;
                }
                t[pack(q, v) * k + l] = pack(qq, vv);
            }
        }
    }
    const StateId f0 = failing_lifted.initial();
    const std::size_t v0 = failing_lifted.accepting(f0) ? 1 : 0;
    Dfa failing_adr = intersect(
        valid_adr, Dfa(alphabet_, pack(f0, v0), std::move(t), std::move(accepting)));
    return std::make_pair(minimize(valid_adr), minimize(failing_adr));
}

} // namespace bugdesc
