// Turning a (relabeled) capture ThreeDfa into a small consistent Dfa.
#pragma once

#include <cstddef>
#include <set>

#include "bugdesc/relabel.hpp"
#include "bugdesc/three_dfa.hpp"

namespace bugdesc {

/// Words drawn from a ThreeDfa: positives run to Acc states, negatives to
/// Rej states. The sets are disjoint since every word has exactly one label.
struct SamplePair {
    std::set<Word> positives;
    std::set<Word> negatives;
};

/// Deterministic sample of a ThreeDfa's classified words: one shortest access
/// word per Acc and per Rej state, every transition covered by completing its
/// shortest access-word extension to the nearest Acc or Rej state, and all
/// classified words up to length extra_depth.
SamplePair sample_words(const ThreeDfa& t, std::size_t extra_depth);

/// Standard RPNI state-merging inference: build the prefix-tree acceptor with
/// accept/reject/unknown marks, then fold blue states into red ones in BFS
/// index order whenever the merge closure creates no mark conflict. Classes
/// with no successor on a letter self-loop, so an unconstrained class behaves
/// as a sink of its own verdict. The result accepts every positive and
/// rejects every negative; a word in both sets raises ConflictError.
Dfa rpni(const SamplePair& sample, const Alphabet& alphabet);

struct ExtractOptions {
    /// Make the output language closed under appending letters, when the
    /// capture itself guarantees failing words never turn passing.
    bool extension_closed = false;
    /// Enumeration depth for the initial sample.
    std::size_t extra_depth = 4;
    /// Cap on counterexample-guided refinement iterations.
    std::size_t max_refinements = 200;
};

struct Extraction {
    /// The explanation automaton, canonical and consistent.
    Dfa dfa;
    /// The relabeled capture the result was checked against.
    ThreeDfa relabeled;
    std::size_t refinements = 0;
    /// True when the minimized Acc view replaced an oversized or
    /// non-converging inference result.
    bool fell_back = false;
    bool extension_closed_applied = false;
};

/// The final pipeline stage. Minimizes the capture, applies the relabeling
/// for `kind`, and infers a small consistent automaton: sample, run rpni,
/// check consistency exactly, feed violations back into the sample, repeat.
/// The minimized Acc view is the fallback whenever inference does not
/// converge or beats it in size, so the result never exceeds the plain bug
/// automaton. kind=B skips inference and returns the minimized Acc view.
Extraction extract_explanation(const ThreeDfa& capture, ExplanationKind kind,
                               const ExtractOptions& opts = {});

} // namespace bugdesc
