#include "bugdesc/extract.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <utility>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"

namespace bugdesc {

namespace {

std::vector<std::optional<Word>> access_words3(const ThreeDfa& t) {
    std::vector<std::optional<Word>> access(t.num_states());
    std::deque<StateId> queue;
    access[t.initial()] = Word{};
    queue.push_back(t.initial());
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < t.alphabet().size(); ++l) {
            const StateId qq = t.next(q, l);
            if (!access[qq]) {
                Word w = *access[q];
                w.push_back(l);
                access[qq] = std::move(w);
                queue.push_back(qq);
            }
        }
    }
    return access;
}

/// Shortest word from each state to any Acc or Rej state, BFS letter order.
std::vector<std::optional<Word>> completion_words(const ThreeDfa& t) {
    const std::size_t n = t.num_states();
    const std::size_t k = t.alphabet().size();
    std::vector<std::optional<Word>> completion(n);
    std::deque<StateId> queue;
    for (StateId q = 0; q < n; ++q) {
        if (t.label(q) != Label::Dont) {
            completion[q] = Word{};
            queue.push_back(q);
        }
    }
    std::vector<std::vector<std::pair<StateId, Letter>>> rev(n);
    for (StateId q = 0; q < n; ++q) {
        for (Letter l = 0; l < k; ++l) rev[t.next(q, l)].emplace_back(q, l);
    }
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (const auto& [p, l] : rev[q]) {
            if (!completion[p]) {
                Word w;
                w.push_back(l);
                w.insert(w.end(), completion[q]->begin(), completion[q]->end());
                completion[p] = std::move(w);
                queue.push_back(p);
            }
        }
    }
    return completion;
}

void add_classified(const ThreeDfa& t, const Word& w, SamplePair& sample) {
    switch (t.label_of(w)) {
        case Label::Acc: sample.positives.insert(w); break;
        case Label::Rej: sample.negatives.insert(w); break;
        case Label::Dont: break;
    }
}

} // namespace

SamplePair sample_words(const ThreeDfa& t, std::size_t extra_depth) {
    SamplePair sample;
    const auto access = access_words3(t);
    const auto completion = completion_words(t);
    const std::size_t k = t.alphabet().size();

    for (StateId q = 0; q < t.num_states(); ++q) {
        if (access[q] && t.label(q) != Label::Dont) add_classified(t, *access[q], sample);
    }
    for (StateId q = 0; q < t.num_states(); ++q) {
        if (!access[q]) continue;
        for (Letter l = 0; l < k; ++l) {
            const StateId target = t.next(q, l);
            if (!completion[target]) continue;
            Word w = *access[q];
            w.push_back(l);
            w.insert(w.end(), completion[target]->begin(), completion[target]->end());
            add_classified(t, w, sample);
        }
    }
    std::vector<Word> frontier{Word{}};
    add_classified(t, Word{}, sample);
    for (std::size_t depth = 1; depth <= extra_depth; ++depth) {
        std::vector<Word> next_frontier;
        next_frontier.reserve(frontier.size() * k);
        for (const Word& w : frontier) {
            for (Letter l = 0; l < k; ++l) {
                Word ext = w;
                ext.push_back(l);
                add_classified(t, ext, sample);
                next_frontier.push_back(std::move(ext));
            }
        }
        frontier = std::move(next_frontier);
    }
    return sample;
}

namespace {

enum class Mark : std::uint8_t { None, Accept, Reject };

struct Pta {
    std::vector<std::vector<int>> children; // node x letter, -1 = none
    std::vector<Mark> marks;

    int add_child(int node, std::size_t k, Letter l) {
        if (children[node][l] < 0) {
            children[node][l] = static_cast<int>(children.size());
            children.emplace_back(k, -1);
            marks.push_back(Mark::None);
        }
        return children[node][l];
    }
};

struct MergeState {
    std::vector<int> parent;                // union-find
    std::vector<Mark> marks;                // valid at roots
    std::vector<std::vector<int>> succ;     // valid at roots, -1 = none

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return true;
        if ((marks[a] == Mark::Accept && marks[b] == Mark::Reject) ||
            (marks[a] == Mark::Reject && marks[b] == Mark::Accept)) {
            return false;
        }
        if (marks[a] == Mark::None) marks[a] = marks[b];
        parent[b] = a;
        for (std::size_t l = 0; l < succ[a].size(); ++l) {
            const int sb = succ[b][l];
            if (sb < 0) continue;
            const int sa = succ[a][l];
            if (sa < 0) {
                succ[a][l] = sb;
            } else if (!merge(sa, sb)) {
                return false;
            }
        }
        return true;
    }
};

} // namespace

Dfa rpni(const SamplePair& sample, const Alphabet& alphabet) {
    const std::size_t k = alphabet.size();
    Pta pta;
    pta.children.emplace_back(k, -1);
    pta.marks.push_back(Mark::None);
    auto insert = [&](const Word& w, Mark mark) {
        int node = 0;
        for (Letter l : w) {
            if (l >= k) throw AlphabetMismatchError("sample word letter outside the alphabet");
            node = pta.add_child(node, k, l);
        }
        if (pta.marks[node] != Mark::None && pta.marks[node] != mark) {
            throw ConflictError("word '" + format_word(alphabet, w) +
                                "' appears as both positive and negative");
        }
        pta.marks[node] = mark;
    };
    for (const Word& w : sample.positives) insert(w, Mark::Accept);
    for (const Word& w : sample.negatives) insert(w, Mark::Reject);

    // Renumber nodes in BFS order so merge candidates follow BFS indices.
    const std::size_t n = pta.children.size();
    std::vector<int> bfs_of(n, -1);
    std::vector<int> node_at(n);
    {
        std::deque<int> queue{0};
        bfs_of[0] = 0;
        node_at[0] = 0;
        int counter = 1;
        while (!queue.empty()) {
            const int node = queue.front();
            queue.pop_front();
            for (std::size_t l = 0; l < k; ++l) {
                const int child = pta.children[node][l];
                if (child >= 0 && bfs_of[child] < 0) {
                    bfs_of[child] = counter;
                    node_at[counter] = child;
                    ++counter;
                    queue.push_back(child);
                }
            }
        }
    }
    MergeState state;
    state.parent.resize(n);
    state.marks.resize(n);
    state.succ.assign(n, std::vector<int>(k, -1));
    for (std::size_t i = 0; i < n; ++i) {
        state.parent[i] = static_cast<int>(i);
        state.marks[i] = pta.marks[node_at[i]];
        for (std::size_t l = 0; l < k; ++l) {
            const int child = pta.children[node_at[i]][l];
            if (child >= 0) state.succ[i][l] = bfs_of[child];
        }
    }

    std::vector<int> reds{0};
    for (;;) {
        // Blue states: successors of red classes that are not red themselves.
        int blue = -1;
        for (int red : reds) {
            for (std::size_t l = 0; l < k; ++l) {
                const int s = state.succ[red][l];
                if (s < 0) continue;
                const int root = state.find(s);
                if (std::find(reds.begin(), reds.end(), root) != reds.end()) continue;
                if (blue < 0 || root < blue) blue = root;
            }
        }
        if (blue < 0) break;
        bool merged = false;
        for (int red : reds) {
            MergeState trial = state;
            if (trial.merge(red, blue)) {
                state = std::move(trial);
                merged = true;
                break;
            }
        }
        if (!merged) reds.push_back(blue);
    }

    std::vector<StateId> state_of(n);
    for (std::size_t i = 0; i < reds.size(); ++i) state_of[reds[i]] = static_cast<StateId>(i);
    std::vector<StateId> transitions(reds.size() * k);
    std::vector<bool> accepting(reds.size());
    for (std::size_t i = 0; i < reds.size(); ++i) {
        accepting[i] = state.marks[reds[i]] == Mark::Accept;
        for (std::size_t l = 0; l < k; ++l) {
            const int s = state.succ[reds[i]][l];
            // A class with no sample successor keeps its own verdict forever.
            transitions[i * k + l] = s < 0 ? static_cast<StateId>(i) : state_of[state.find(s)];
        }
    }
    Dfa result =
        canonicalize(Dfa(alphabet, state_of[state.find(0)], std::move(transitions),
                         std::move(accepting)));
#ifndef NDEBUG
    for (const Word& w : sample.positives) assert(result.accepts(w));
    for (const Word& w : sample.negatives) assert(!result.accepts(w));
#endif
    return result;
}

namespace {

/// No Acc state reaches a Rej state, so failing words never turn passing and
/// appending letters to an accepted word cannot contradict the capture.
bool closure_safe(const ThreeDfa& t) {
    std::vector<StateId> rej;
    for (StateId q = 0; q < t.num_states(); ++q) {
        if (t.label(q) == Label::Rej) rej.push_back(q);
    }
    const auto reach_rej = backward_reachability(t, rej);
    for (StateId q : reach_rej) {
        if (t.label(q) == Label::Acc) return false;
    }
    return true;
}

} // namespace

Extraction extract_explanation(const ThreeDfa& capture, ExplanationKind kind,
                               const ExtractOptions& opts) {
    const ThreeDfa base = canonicalize3(minimize3(capture));
    const ThreeDfa relabeled = relabel_for(kind, base);
    const bool close = opts.extension_closed && closure_safe(relabeled);
    auto finish = [&](const Dfa& d) {
        return canonicalize(minimize(close ? make_extension_closed(d) : d));
    };
    const Dfa fallback = finish(relabeled.view(Label::Acc));
    assert(!check_consistency(fallback, relabeled, kind));

    if (kind == ExplanationKind::B) {
        return Extraction{fallback, relabeled, 0, false, close};
    }

    SamplePair sample = sample_words(relabeled, opts.extra_depth);
    std::size_t refinements = 0;
    std::optional<Dfa> candidate;
    for (; refinements <= opts.max_refinements; ++refinements) {
        const Dfa inferred = finish(rpni(sample, relabeled.alphabet()));
        const auto violation = check_consistency(inferred, relabeled, kind);
        if (!violation) {
            candidate = inferred;
            break;
        }
        if (relabeled.label_of(*violation) == Label::Acc) {
            sample.positives.insert(*violation);
        } else {
            sample.negatives.insert(*violation);
        }
    }
    if (candidate && candidate->num_states() <= fallback.num_states()) {
        return Extraction{*candidate, relabeled, refinements, false, close};
    }
    return Extraction{fallback, relabeled, refinements, true, close};
}

} // namespace bugdesc
