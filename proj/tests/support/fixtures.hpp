// Shared fixtures: the worked parity-bug example and seeded random systems.
#pragma once

#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/sut.hpp"
#include "bugdesc/test_model.hpp"
#include "bugdesc/three_dfa.hpp"

namespace fixtures {

using namespace bugdesc;

inline Alphabet binary_alphabet() { return Alphabet({"0", "1"}); }

/// Valid tests of the parity-bug system: words starting 00 or 1.
inline Dfa parity_valid() {
    const Alphabet sigma = binary_alphabet();
    // s0 -0-> s1 -0-> s3(acc sink); s0 -1-> s3; everything else dead.
    return Dfa(sigma, 0,
               {
                   1, 3, // s0
                   3, 2, // s1
                   2, 2, // s2 dead
                   3, 3, // s3 accepting sink
               },
               {false, false, false, true});
}

/// Failing tests: 00 anything, or 1 followed by letter pairs starting 1 and
/// then a 0 (the second action of each pair is swallowed before the check).
inline Dfa parity_failing() {
    const Alphabet sigma = binary_alphabet();
    // b0 -0-> b1 -0-> b3(acc sink), b1 -1-> b4 dead;
    // b0 -1-> b2; b2 -0-> b3, b2 -1-> b5; b5 -any-> b2.
    return Dfa(sigma, 0,
               {
                   1, 2, // b0
                   3, 4, // b1
                   3, 5, // b2
                   3, 3, // b3 accepting sink
                   4, 4, // b4 dead
                   2, 2, // b5
               },
               {false, false, false, true, false, false});
}

inline std::shared_ptr<SimulatedSut> parity_sut() {
    return std::make_shared<SimulatedSut>(parity_valid(), parity_failing());
}

/// The minimal capture of the parity-bug classification under T = all words.
inline ThreeDfa parity_capture() {
    const Alphabet sigma = binary_alphabet();
    return ThreeDfa(sigma, 0,
                    {
                        1, 2, // q0
                        3, 4, // q1
                        3, 5, // q2
                        3, 3, // q3 failing sink
                        4, 4, // q4 out-of-scope sink
                        2, 2, // q5
                    },
                    {Label::Dont, Label::Dont, Label::Rej, Label::Acc, Label::Dont, Label::Rej});
}

/// Minimal failure explanation of the parity bug: flag after an odd-position
/// 0 action, i.e. the language (Σ1)*Σ0Σ*.
inline Dfa parity_fe3() {
    const Alphabet sigma = binary_alphabet();
    // s -any-> q; q -1-> s; q -0-> r(acc sink).
    return Dfa(sigma, 0,
               {
                   1, 1, // s
                   2, 0, // q
                   2, 2, // r accepting sink
               },
               {false, false, true});
}

/// Minimal early-detection explanation: 0Σ* + 1(1Σ)*0Σ*.
inline Dfa parity_edfe4() {
    const Alphabet sigma = binary_alphabet();
    // s -0-> r, s -1-> q1; q1 -0-> r, q1 -1-> q2; q2 -any-> q1; r acc sink.
    return Dfa(sigma, 0,
               {
                   3, 1, // s
                   3, 2, // q1
                   1, 1, // q2
                   3, 3, // r accepting sink
               },
               {false, false, false, true});
}

/// Seeded random system: a valid-test DFA with up to five states over {0,1}
/// and a failing language that latches once the run visits a trigger state,
/// so the failing set is extension-closed within the valid set by
/// construction.
struct RandomFixture {
    Dfa valid;
    Dfa failing;
};

inline RandomFixture random_fixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Alphabet sigma = binary_alphabet();
    const std::size_t k = sigma.size();
    for (;;) {
        std::uniform_int_distribution<std::size_t> num_states(2, 5);
        const std::size_t n = num_states(rng);
        std::uniform_int_distribution<StateId> pick_state(0, static_cast<StateId>(n - 1));
        std::bernoulli_distribution coin(0.5);
        std::vector<StateId> transitions(n * k);
        for (auto& t : transitions) t = pick_state(rng);
        std::vector<bool> accepting(n);
        bool any = false;
        for (std::size_t q = 0; q < n; ++q) {
            accepting[q] = coin(rng);
            any = any || accepting[q];
        }
        if (!any) continue;
        Dfa valid(sigma, 0, std::move(transitions), std::move(accepting));

        std::vector<bool> trigger(n);
        bool any_trigger = false;
        for (std::size_t q = 0; q < n; ++q) {
            trigger[q] = coin(rng);
            any_trigger = any_trigger || trigger[q];
        }
        if (!any_trigger) continue;
        // Latch product: (state, latched); the latch never clears.
        std::vector<StateId> ft(n * 2 * k);
        std::vector<bool> fa(n * 2);
        auto pack = [&](StateId q, bool latched) {
            return static_cast<StateId>(q * 2 + (latched ? 1 : 0));
        };
        for (StateId q = 0; q < n; ++q) {
            for (int b = 0; b < 2; ++b) {
                fa[pack(q, b)] = valid.accepting(q) && b;
                for (Letter l = 0; l < k; ++l) {
                    const StateId qq = valid.next(q, l);
                    const bool latched = b || trigger[qq];
                    ft[pack(q, b) * k + l] = pack(qq, latched);
                }
            }
        }
        Dfa failing(sigma, pack(0, trigger[0]), std::move(ft), std::move(fa));
        return RandomFixture{canonicalize(minimize(valid)), canonicalize(minimize(failing))};
    }
}

/// The true capture of a fixture under T = all words, built directly from
/// products rather than learning: Acc on failing words, Rej on valid
/// non-failing words, Dont elsewhere.
inline ThreeDfa true_capture(const Dfa& valid, const Dfa& failing) {
    const Alphabet& sigma = valid.alphabet();
    const std::size_t k = sigma.size();
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto intern = [&](StateId a, StateId b) {
        auto [it, inserted] =
            index.emplace(std::make_pair(a, b), static_cast<StateId>(pairs.size()));
        if (inserted) pairs.emplace_back(a, b);
        return it->second;
    };
    std::vector<StateId> transitions;
    intern(valid.initial(), failing.initial());
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        const auto [a, b] = pairs[head];
        for (Letter l = 0; l < k; ++l) {
            transitions.push_back(intern(valid.next(a, l), failing.next(b, l)));
        }
    }
    std::vector<Label> labels(pairs.size());
    for (StateId p = 0; p < pairs.size(); ++p) {
        const auto [a, b] = pairs[p];
        if (failing.accepting(b)) {
            labels[p] = Label::Acc;
        } else if (valid.accepting(a)) {
            labels[p] = Label::Rej;
        } else {
            labels[p] = Label::Dont;
        }
    }
    return canonicalize3(minimize3(ThreeDfa(sigma, 0, std::move(transitions), std::move(labels))));
}

/// Lower bound on the states any exact classifier needs: the number of
/// distinct classification signatures over bounded prefixes and suffixes.
inline std::size_t nerode_lower_bound(const ThreeDfa& truth, std::size_t prefix_len,
                                      std::size_t suffix_len) {
    const std::size_t k = truth.alphabet().size();
    std::vector<Word> words{Word{}};
    for (std::size_t len = 1, begin = 0; len <= std::max(prefix_len, suffix_len); ++len) {
        const std::size_t end = words.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (Letter l = 0; l < k; ++l) {
                Word w = words[i];
                w.push_back(l);
                words.push_back(std::move(w));
            }
        }
        begin = end;
    }
    std::set<std::vector<Label>> signatures;
    for (const Word& prefix : words) {
        if (prefix.size() > prefix_len) continue;
        std::vector<Label> sig;
        for (const Word& suffix : words) {
            if (suffix.size() > suffix_len) continue;
            Word w = prefix;
            w.insert(w.end(), suffix.begin(), suffix.end());
            sig.push_back(truth.label_of(w));
        }
        signatures.insert(std::move(sig));
    }
    return signatures.size();
}

} // namespace fixtures
