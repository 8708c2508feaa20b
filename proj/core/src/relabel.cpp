#include "bugdesc/relabel.hpp"

#include <algorithm>
#include <stdexcept>
#include <cctype>
#include <set>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"

namespace bugdesc {

const char* explanation_kind_name(ExplanationKind kind) {
    switch (kind) {
        case ExplanationKind::B: return "B";
        case ExplanationKind::FE: return "FE";
        case ExplanationKind::EFE: return "EFE";
        case ExplanationKind::EDFE: return "EDFE";
        case ExplanationKind::EDEFE: return "EDEFE";
    }
    return "?";
}

ExplanationKind parse_explanation_kind(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "b") return ExplanationKind::B;
    if (lower == "fe") return ExplanationKind::FE;
    if (lower == "efe") return ExplanationKind::EFE;
    if (lower == "edfe") return ExplanationKind::EDFE;
    if (lower == "edefe") return ExplanationKind::EDEFE;
    throw ParseError("unknown explanation kind '" + name + "' (expected b, fe, efe, edfe, edefe)");
}

ThreeDfa efe_relabel(const ThreeDfa& t) {
    const std::size_t n = t.num_states();
    const std::size_t k = t.alphabet().size();

    auto is_sink = [&](StateId q) {
        for (Letter l = 0; l < k; ++l) {
            if (t.next(q, l) != q) return false;
        }
        return true;
    };
    std::vector<bool> sink_dont(n, false);
    for (StateId q = 0; q < n; ++q) sink_dont[q] = t.label(q) == Label::Dont && is_sink(q);

    // Maximal passing states: Rej states whose every transition ends the test.
    std::vector<StateId> seeds;
    for (StateId q = 0; q < n; ++q) {
        if (t.label(q) != Label::Rej) continue;
        bool all_into_sink = true;
        for (Letter l = 0; l < k && all_into_sink; ++l) all_into_sink = sink_dont[t.next(q, l)];
        if (all_into_sink) seeds.push_back(q);
    }
    std::set<StateId> may_pass;
    for (StateId q : backward_reachability(t, seeds)) may_pass.insert(q);

    // A cycle through a Rej state lets a run postpone failing forever; the
    // whole component may still pass. Single states only count with a
    // self-loop, otherwise every Rej state would trivially join.
    for (const auto& component : scc(t)) {
        const bool cyclic =
            component.size() > 1 || [&] {
                for (Letter l = 0; l < k; ++l) {
                    if (t.next(component[0], l) == component[0]) return true;
                }
                return false;
            }();
        if (!cyclic) continue;
        const bool has_rej = std::any_of(component.begin(), component.end(), [&](StateId q) {
            return t.label(q) == Label::Rej;
        });
        if (has_rej) {
            for (StateId q : component) may_pass.insert(q);
        }
    }
    std::vector<StateId> all_seeds(may_pass.begin(), may_pass.end());
    may_pass.clear();
    for (StateId q : backward_reachability(t, all_seeds)) may_pass.insert(q);

    std::vector<Label> labels(n);
    for (StateId q = 0; q < n; ++q) {
        Label label = t.label(q);
        if (label == Label::Rej && may_pass.find(q) == may_pass.end()) label = Label::Dont;
        labels[q] = label;
    }
    return t.with_labels(std::move(labels));
}

ThreeDfa ed_relabel(const ThreeDfa& t) {
    std::vector<StateId> acc_states;
    std::vector<StateId> rej_states;
    for (StateId q = 0; q < t.num_states(); ++q) {
        if (t.label(q) == Label::Acc) acc_states.push_back(q);
        if (t.label(q) == Label::Rej) rej_states.push_back(q);
    }
    const auto reach_acc = backward_reachability(t, acc_states);
    const auto reach_rej = backward_reachability(t, rej_states);
    std::vector<bool> in_reach_rej(t.num_states(), false);
    for (StateId q : reach_rej) in_reach_rej[q] = true;

    std::vector<Label> labels(t.num_states());
    for (StateId q = 0; q < t.num_states(); ++q) labels[q] = t.label(q);
    for (StateId q : acc_states) {
        if (in_reach_rej[q]) {
            throw std::invalid_argument(
                "early detection needs failing words to stay failing, but an Acc state "
                "reaches a Rej state");
        }
    }
    for (StateId q : reach_acc) {
        if (!in_reach_rej[q] && labels[q] == Label::Dont) labels[q] = Label::Acc;
    }
    return t.with_labels(std::move(labels));
}

ThreeDfa relabel_for(ExplanationKind kind, const ThreeDfa& capture) {
    switch (kind) {
        case ExplanationKind::B:
        case ExplanationKind::FE: return capture;
        case ExplanationKind::EFE: return efe_relabel(capture);
        case ExplanationKind::EDFE: return ed_relabel(capture);
        case ExplanationKind::EDEFE: return ed_relabel(efe_relabel(capture));
    }
    return capture;
}

std::optional<Word> check_consistency(const Dfa& candidate, const ThreeDfa& capture,
                                      ExplanationKind) {
    if (!(candidate.alphabet() == capture.alphabet())) {
        throw AlphabetMismatchError("candidate and capture use different alphabets");
    }
    const Dfa must_accept = capture.view(Label::Acc);
    const Dfa must_reject = capture.view(Label::Rej);
    const Dfa violations =
        unite(intersect(must_accept, complement(candidate)), intersect(must_reject, candidate));
    const std::size_t k = capture.alphabet().size();
    const Dfa nothing(capture.alphabet(), 0, std::vector<StateId>(k, 0), std::vector<bool>{false});
    return equivalent(violations, nothing);
}

} // namespace bugdesc
