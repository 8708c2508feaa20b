#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bugdesc/dfa.hpp"
#include "bugdesc/three_dfa.hpp"

namespace bugdesc {

/// Reachable product of two automata over the same alphabet; the acceptance of
/// a product state is combine(acc1, acc2). Throws AlphabetMismatchError when
/// the alphabets differ.
Dfa product_combine(const Dfa& a, const Dfa& b,
                    const std::function<bool(bool, bool)>& combine);

// Common combiners.
Dfa intersect(const Dfa& a, const Dfa& b);   // a ∧ b
Dfa unite(const Dfa& a, const Dfa& b);       // a ∨ b
Dfa difference(const Dfa& a, const Dfa& b);  // a ∧ ¬b
Dfa complement(const Dfa& a);

/// Shortest word on which the two languages differ (ties broken by alphabet
/// order); std::nullopt when the languages are equal.
std::optional<Word> equivalent(const Dfa& a, const Dfa& b);

/// Shortest word the two classifiers label differently.
std::optional<Word> equivalent3(const ThreeDfa& a, const ThreeDfa& b);

/// Minimal complete DFA for the same language (unreachable states dropped,
/// then partition refinement, then canonical numbering).
Dfa minimize(const Dfa& a);

/// Label-preserving minimization: initial partition by label instead of by
/// acceptance, otherwise identical to minimize().
ThreeDfa minimize3(const ThreeDfa& a);

/// Isomorphism-invariant renumbering: breadth-first from the initial state,
/// letters in alphabet order; unreachable states are dropped. Two isomorphic
/// automata canonicalize to structurally identical ones.
Dfa canonicalize(const Dfa& a);
ThreeDfa canonicalize3(const ThreeDfa& a);

/// Redirects every transition leaving an accepting state back to that state,
/// making the accepted language closed under extension. State count unchanged.
Dfa make_extension_closed(const Dfa& a);

/// Strongly connected components of the transition graph, in reverse
/// topological order (a component is listed before every component that can
/// reach it). States within a component are sorted ascending. Singletons
/// without a self-loop are returned as their own (trivial) components.
std::vector<std::vector<StateId>> scc(const ThreeDfa& a);

/// All states from which some target state is reachable (reflexive: the
/// targets themselves are included). Returned sorted ascending.
std::vector<StateId> backward_reachability(const ThreeDfa& a,
                                           const std::vector<StateId>& targets);

} // namespace bugdesc
