#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "bugdesc/dfa.hpp"
#include "bugdesc/three_dfa.hpp"

namespace bugdesc::oracle {

// Slow, direct implementations used to cross-check the learner, the
// relabelings, and the extractor. They deliberately avoid the code paths they
// verify (no product_combine/minimize/scc/backward_reachability calls).

/// True label of every word of length <= max_len, decided directly against the
/// test-model/valid/failing languages: outside t -> Dont, outside s -> Dont,
/// inside b -> Acc, otherwise Rej. Words are enumerated in length-then-alphabet
/// order. Throws BudgetError when the word count would exceed word_budget.
std::map<Word, Label> enumerate_classify(const Dfa& t, const Dfa& s, const Dfa& b,
                                         std::size_t max_len,
                                         std::uint64_t word_budget = 2'000'000);

/// Whether the test prefix w "may pass": either some extension wu lies in
/// S \ B and is maximal in S (no proper extension of wu is in S), or w can be
/// extended so that it lies in S \ B infinitely often (a reachable cycle
/// through an (S\B)-accepting pair state). Throws std::invalid_argument when
/// w is not a prefix of any word in S.
bool brute_may_pass(const Dfa& s, const Dfa& b, const Word& w);

/// Smallest complete DFA (by state count, up to max_states) that accepts every
/// Acc word and rejects every Rej word of spec3, found by enumerating
/// BFS-canonical transition tables (one representative per isomorphism class)
/// depth-first with incremental conflict pruning. Deterministic: sizes are
/// tried in increasing order and the first consistent table in enumeration
/// order wins; states not forced either way reject. Returns std::nullopt when
/// no DFA with at most max_states states is consistent.
std::optional<Dfa> exhaustive_min_consistent(const ThreeDfa& spec3, std::size_t max_states);

} // namespace bugdesc::oracle
