// State relabelings that turn a capture ThreeDfa into coarser bug views.
#pragma once

#include <optional>
#include <string>

#include "bugdesc/dfa.hpp"
#include "bugdesc/three_dfa.hpp"

namespace bugdesc {

/// Which description of the bug to produce.
///   B      the failing words themselves
///   FE     any language consistent with failing vs passing words
///   EFE    passing words that can no longer fail are dropped to don't-care
///   EDFE   a word is flagged as soon as every valid extension fails
///   EDEFE  both relaxations combined
enum class ExplanationKind { B, FE, EFE, EDFE, EDEFE };

const char* explanation_kind_name(ExplanationKind kind);
ExplanationKind parse_explanation_kind(const std::string& name);

/// Eventual-failure relabeling. A Rej state stays Rej only if a passing run
/// through it can still avoid failing forever: it reaches a maximal passing
/// state (all transitions into the all-self-loop Dont sink), or it reaches a
/// cycle through a Rej state where a run can postpone failing indefinitely.
/// All other Rej states become Dont. States, transitions, and Acc labels are
/// untouched. Expects a minimized input so the Dont sink is unique.
ThreeDfa efe_relabel(const ThreeDfa& t);

/// Early-detection relabeling. A state becomes Acc when it can reach an Acc
/// state but no Rej state, so every way of finishing the test from it fails.
/// An Acc state reaching a Rej state violates the precondition (failing words
/// stay failing) and throws std::invalid_argument; Rej labels are untouched.
ThreeDfa ed_relabel(const ThreeDfa& t);

/// The relabeling pipeline for a kind: none for B and FE, efe_relabel for
/// EFE, ed_relabel for EDFE, and ed_relabel after efe_relabel for EDEFE.
ThreeDfa relabel_for(ExplanationKind kind, const ThreeDfa& capture);

/// Exact consistency check of a candidate description against a capture that
/// was already relabeled for `kind`: returns a shortest word the capture
/// labels Acc but the candidate rejects, or labels Rej but the candidate
/// accepts; absent iff the candidate is consistent.
std::optional<Word> check_consistency(const Dfa& candidate, const ThreeDfa& capture,
                                      ExplanationKind kind);

} // namespace bugdesc
