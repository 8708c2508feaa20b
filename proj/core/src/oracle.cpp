#include "bugdesc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bugdesc/errors.hpp"

namespace bugdesc::oracle {

namespace {

constexpr StateId kNone = static_cast<StateId>(-1);

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (a != b) throw AlphabetMismatchError("operands are over different alphabets");
}

} // namespace

std::map<Word, Label> enumerate_classify(const Dfa& t, const Dfa& s, const Dfa& b,
                                         std::size_t max_len, std::uint64_t word_budget) {
    require_same_alphabet(t.alphabet(), s.alphabet());
    require_same_alphabet(t.alphabet(), b.alphabet());
    const std::uint64_t k = t.alphabet().size();

    std::uint64_t total = 0, layer = 1;
    for (std::size_t len = 0; len <= max_len; ++len) {
        total += layer;
        if (total > word_budget) {
            throw BudgetError("enumerate_classify: " + std::to_string(k) + "^0.." +
                              std::to_string(max_len) + " words exceed the budget of " +
                              std::to_string(word_budget));
        }
        layer *= k;
    }

    std::map<Word, Label> out;
    // Walk the word tree level by level, carrying the three automaton states.
    struct Node {
        Word word;
        StateId qt, qs, qb;
    };
    std::deque<Node> frontier;
    frontier.push_back({Word{}, t.initial(), s.initial(), b.initial()});
    while (!frontier.empty()) {
        Node node = std::move(frontier.front());
        frontier.pop_front();
        Label label = Label::Dont;
        if (t.accepting(node.qt) && s.accepting(node.qs)) {
            label = b.accepting(node.qb) ? Label::Acc : Label::Rej;
        }
        out.emplace(node.word, label);
        if (node.word.size() < max_len) {
            for (Letter l = 0; l < k; ++l) {
                Node child = node;
                child.word.push_back(l);
                child.qt = t.next(node.qt, l);
                child.qs = s.next(node.qs, l);
                child.qb = b.next(node.qb, l);
                frontier.push_back(std::move(child));
            }
        }
    }
    return out;
}

namespace {

/// Reachable (s, b) pair graph with its own little BFS, kept separate from
/// product_combine on purpose.
struct PairGraph {
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<StateId> next; // row-major
    std::size_t k;

    PairGraph(const Dfa& s, const Dfa& b) : k(s.alphabet().size()) {
        std::map<std::pair<StateId, StateId>, StateId> index;
        auto intern = [&](StateId qs, StateId qb) {
            auto [it, inserted] =
                index.emplace(std::make_pair(qs, qb), static_cast<StateId>(pairs.size()));
            if (inserted) pairs.emplace_back(qs, qb);
            return it->second;
        };
        intern(s.initial(), b.initial());
        for (std::size_t head = 0; head < pairs.size(); ++head) {
            const auto [qs, qb] = pairs[head];
            for (std::size_t l = 0; l < k; ++l) {
                next.push_back(intern(s.next(qs, static_cast<Letter>(l)),
                                      b.next(qb, static_cast<Letter>(l))));
            }
        }
    }

    std::vector<bool> forward_reach(StateId from) const {
        std::vector<bool> seen(pairs.size(), false);
        std::deque<StateId> queue{from};
        seen[from] = true;
        while (!queue.empty()) {
            const StateId p = queue.front();
            queue.pop_front();
            for (std::size_t l = 0; l < k; ++l) {
                const StateId q = next[p * k + l];
                if (!seen[q]) {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
        return seen;
    }
};

} // namespace

bool brute_may_pass(const Dfa& s, const Dfa& b, const Word& w) {
    require_same_alphabet(s.alphabet(), b.alphabet());
    const PairGraph graph(s, b);
    const std::size_t k = graph.k;

    // Locate the pair state of w.
    StateId at = 0;
    for (Letter l : w) {
        if (l >= k) throw AlphabetMismatchError("letter outside the alphabet");
        at = graph.next[at * k + l];
    }

    auto s_accepting = [&](StateId p) { return s.accepting(graph.pairs[p].first); };
    auto passing = [&](StateId p) {
        return s_accepting(p) && !b.accepting(graph.pairs[p].second);
    };

    // w must be a prefix of S.
    const std::vector<bool> from_w = graph.forward_reach(at);
    {
        bool prefix_of_s = false;
        for (StateId p = 0; p < graph.pairs.size(); ++p) {
            if (from_w[p] && s_accepting(p)) prefix_of_s = true;
        }
        if (!prefix_of_s) throw std::invalid_argument("word is not a prefix of any valid test");
    }

    // States with a path of length >= 1 to an S-accepting state: one backward
    // sweep from {p : some letter leads to an S-accepting state}.
    std::vector<std::vector<StateId>> reverse(graph.pairs.size());
    std::vector<bool> extendable(graph.pairs.size(), false);
    std::deque<StateId> queue;
    for (StateId p = 0; p < graph.pairs.size(); ++p) {
        for (std::size_t l = 0; l < k; ++l) {
            const StateId q = graph.next[p * k + l];
            reverse[q].push_back(p);
            if (s_accepting(q) && !extendable[p]) {
                extendable[p] = true;
                queue.push_back(p);
            }
        }
    }
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (StateId p : reverse[q]) {
            if (!extendable[p]) {
                extendable[p] = true;
                queue.push_back(p);
            }
        }
    }

    for (StateId p = 0; p < graph.pairs.size(); ++p) {
        if (!from_w[p] || !passing(p)) continue;
        // Condition (1): a maximal passing extension, i.e. a passing state
        // from which no non-empty continuation stays executable.
        if (!extendable[p]) return true;
        // Condition (2): a cycle through a passing state; p lies on a cycle
        // iff p is reachable from one of its own successors.
        for (std::size_t l = 0; l < k; ++l) {
            if (graph.forward_reach(graph.next[p * k + l])[p]) return true;
        }
    }
    return false;
}

namespace {

/// Incremental consistency check for a partial transition table against the
/// spec: explores the pair closure of (candidate, spec3) over assigned cells
/// and accumulates forced accept/reject bits per candidate state. A state
/// forced both ways is a conflict.
bool partial_consistent(const std::vector<StateId>& table, std::size_t n, std::size_t k,
                        const ThreeDfa& spec) {
    std::vector<std::vector<bool>> paired(n, std::vector<bool>(spec.num_states(), false));
    std::vector<bool> forced_acc(n, false), forced_rej(n, false);
    std::deque<std::pair<StateId, StateId>> queue;
    auto visit = [&](StateId q, StateId m) {
        if (paired[q][m]) return true;
        paired[q][m] = true;
        if (spec.label(m) == Label::Acc) forced_acc[q] = true;
        if (spec.label(m) == Label::Rej) forced_rej[q] = true;
        if (forced_acc[q] && forced_rej[q]) return false;
        queue.emplace_back(q, m);
        return true;
    };
    if (!visit(0, spec.initial())) return false;
    while (!queue.empty()) {
        const auto [q, m] = queue.front();
        queue.pop_front();
        for (std::size_t l = 0; l < k; ++l) {
            const StateId t = table[q * k + l];
            if (t == kNone) continue;
            if (!visit(t, spec.next(m, static_cast<Letter>(l)))) return false;
        }
    }
    return true;
}

/// Final acceptance assignment once the full table is consistent.
std::vector<bool> forced_acceptance(const std::vector<StateId>& table, std::size_t n,
                                    std::size_t k, const ThreeDfa& spec) {
    std::vector<std::vector<bool>> paired(n, std::vector<bool>(spec.num_states(), false));
    std::vector<bool> forced_acc(n, false);
    std::deque<std::pair<StateId, StateId>> queue;
    paired[0][spec.initial()] = true;
    queue.emplace_back(0, spec.initial());
    while (!queue.empty()) {
        const auto [q, m] = queue.front();
        queue.pop_front();
        if (spec.label(m) == Label::Acc) forced_acc[q] = true;
        for (std::size_t l = 0; l < k; ++l) {
            const StateId qq = table[q * k + l];
            const StateId mm = spec.next(m, static_cast<Letter>(l));
            if (!paired[qq][mm]) {
                paired[qq][mm] = true;
                queue.emplace_back(qq, mm);
            }
        }
    }
    return forced_acc;
}

/// Depth-first search over BFS-canonical tables of exactly n states. Cells are
/// assigned row-major; a cell may point at most one past the highest state
/// referenced so far, which enumerates each initially-connected transition
/// structure exactly once up to isomorphism.
bool search_tables(std::vector<StateId>& table, std::size_t cell, StateId max_used, std::size_t n,
                   std::size_t k, const ThreeDfa& spec, std::optional<Dfa>& found) {
    if (cell == n * k) {
        if (max_used != n - 1) return false; // fewer than n states actually used
        if (!partial_consistent(table, n, k, spec)) return false;
        std::vector<bool> accepting = forced_acceptance(table, n, k, spec);
        found = Dfa(spec.alphabet(), 0, table, std::move(accepting));
        return true;
    }
    // Remaining cells after this one must still be able to introduce the
    // states not yet used, otherwise the table cannot reach n states.
    const std::size_t remaining = n * k - cell - 1;
    const StateId limit = static_cast<StateId>(std::min<std::size_t>(max_used + 1, n - 1));
    for (StateId target = 0; target <= limit; ++target) {
        const StateId new_max = std::max(max_used, target);
        if (static_cast<std::size_t>(n - 1 - new_max) > remaining) continue;
        table[cell] = target;
        if (partial_consistent(table, n, k, spec)) {
            if (search_tables(table, cell + 1, new_max, n, k, spec, found)) return true;
        }
    }
    table[cell] = kNone;
    return false;
}

} // namespace

std::optional<Dfa> exhaustive_min_consistent(const ThreeDfa& spec3, std::size_t max_states) {
    const std::size_t k = spec3.alphabet().size();
    for (std::size_t n = 1; n <= max_states; ++n) {
        std::vector<StateId> table(n * k, kNone);
        std::optional<Dfa> found;
        if (search_tables(table, 0, 0, n, k, spec3, found)) return found;
    }
    return std::nullopt;
}

} // namespace bugdesc::oracle
