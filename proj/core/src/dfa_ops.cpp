#include "bugdesc/dfa_ops.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <utility>

#include "bugdesc/errors.hpp"

namespace bugdesc {

namespace {

constexpr StateId kNone = static_cast<StateId>(-1);

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (a != b) throw AlphabetMismatchError("operands are over different alphabets");
}

/// Breadth-first discovery order over a row-major transition table.
/// Returns old->new ids (kNone for unreachable) and the new->old order.
std::pair<std::vector<StateId>, std::vector<StateId>> bfs_order(
    const std::vector<StateId>& transitions, std::size_t num_states, std::size_t num_letters,
    StateId initial) {
    std::vector<StateId> renumber(num_states, kNone);
    std::vector<StateId> order;
    order.reserve(num_states);
    renumber[initial] = 0;
    order.push_back(initial);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const StateId q = order[head];
        for (std::size_t l = 0; l < num_letters; ++l) {
            const StateId t = transitions[q * num_letters + l];
            if (renumber[t] == kNone) {
                renumber[t] = static_cast<StateId>(order.size());
                order.push_back(t);
            }
        }
    }
    return {std::move(renumber), std::move(order)};
}

/// Moore partition refinement on reachable states. `initial_class` assigns the
/// seed partition (already densely numbered by first appearance); the return
/// value maps every reachable state to its block, blocks densely numbered by
/// first appearance in state order.
std::vector<StateId> refine_partition(const std::vector<StateId>& transitions,
                                      std::size_t num_letters,
                                      const std::vector<StateId>& reachable,
                                      std::vector<StateId> cls) {
    const std::size_t n = cls.size();
    std::size_t num_classes = 0;
    for (StateId q : reachable) num_classes = std::max<std::size_t>(num_classes, cls[q] + 1);

    while (true) {
        // Signature: own class plus successor classes, letters in order.
        std::map<std::vector<StateId>, StateId> sig_to_class;
        std::vector<StateId> next_cls(n, kNone);
        std::vector<StateId> sig;
        for (StateId q : reachable) {
            sig.clear();
            sig.push_back(cls[q]);
            for (std::size_t l = 0; l < num_letters; ++l) {
                sig.push_back(cls[transitions[q * num_letters + l]]);
            }
            auto [it, inserted] =
                sig_to_class.emplace(sig, static_cast<StateId>(sig_to_class.size()));
            (void)inserted;
            next_cls[q] = it->second;
        }
        // Renumber by first appearance so the result is deterministic.
        std::vector<StateId> remap(sig_to_class.size(), kNone);
        StateId dense = 0;
        for (StateId q : reachable) {
            if (remap[next_cls[q]] == kNone) remap[next_cls[q]] = dense++;
        }
        for (StateId q : reachable) next_cls[q] = remap[next_cls[q]];

        if (dense == num_classes) return next_cls;
        num_classes = dense;
        cls = std::move(next_cls);
    }
}

struct ProductBuild {
    std::vector<StateId> transitions;
    std::vector<std::pair<StateId, StateId>> pairs; // product state -> (a-state, b-state)
};

ProductBuild build_product(const Dfa& a, const Dfa& b) {
    const std::size_t k = a.alphabet().size();
    ProductBuild out;
    std::map<std::pair<StateId, StateId>, StateId> index;
    auto intern = [&](StateId qa, StateId qb) {
        auto [it, inserted] = index.emplace(std::make_pair(qa, qb),
                                            static_cast<StateId>(out.pairs.size()));
        if (inserted) out.pairs.emplace_back(qa, qb);
        return it->second;
    };
    intern(a.initial(), b.initial());
    for (std::size_t head = 0; head < out.pairs.size(); ++head) {
        const auto [qa, qb] = out.pairs[head];
        for (std::size_t l = 0; l < k; ++l) {
            const StateId t = intern(a.next(qa, static_cast<Letter>(l)),
                                     b.next(qb, static_cast<Letter>(l)));
            out.transitions.push_back(t);
        }
    }
    return out;
}

/// Shortest word reaching a state that satisfies `goal`, exploring the product
/// of a and b breadth-first in alphabet order.
std::optional<Word> shortest_product_word(const Dfa& a, const Dfa& b,
                                          const std::function<bool(bool, bool)>& goal) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const std::size_t k = a.alphabet().size();
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<StateId> parent;
    std::vector<Letter> via;
    auto intern = [&](StateId qa, StateId qb, StateId from, Letter letter) {
        auto [it, inserted] =
            index.emplace(std::make_pair(qa, qb), static_cast<StateId>(pairs.size()));
        if (inserted) {
            pairs.emplace_back(qa, qb);
            parent.push_back(from);
            via.push_back(letter);
        }
        return it->second;
    };
    auto word_to = [&](StateId p) {
        Word w;
        while (parent[p] != kNone) {
            w.push_back(via[p]);
            p = parent[p];
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    intern(a.initial(), b.initial(), kNone, 0);
    if (goal(a.accepting(a.initial()), b.accepting(b.initial()))) return Word{};
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        const auto [qa, qb] = pairs[head];
        for (std::size_t l = 0; l < k; ++l) {
            const StateId ta = a.next(qa, static_cast<Letter>(l));
            const StateId tb = b.next(qb, static_cast<Letter>(l));
            const std::size_t before = pairs.size();
            const StateId p = intern(ta, tb, static_cast<StateId>(head), static_cast<Letter>(l));
            if (pairs.size() > before && goal(a.accepting(ta), b.accepting(tb))) {
                return word_to(p);
            }
        }
    }
    return std::nullopt;
}

} // namespace

Dfa product_combine(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& combine) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    ProductBuild p = build_product(a, b);
    std::vector<bool> accepting(p.pairs.size());
    for (std::size_t i = 0; i < p.pairs.size(); ++i) {
        accepting[i] = combine(a.accepting(p.pairs[i].first), b.accepting(p.pairs[i].second));
    }
    return Dfa(a.alphabet(), 0, std::move(p.transitions), std::move(accepting));
}

Dfa intersect(const Dfa& a, const Dfa& b) {
    return product_combine(a, b, [](bool x, bool y) { return x && y; });
}

Dfa unite(const Dfa& a, const Dfa& b) {
    return product_combine(a, b, [](bool x, bool y) { return x || y; });
}

Dfa difference(const Dfa& a, const Dfa& b) {
    return product_combine(a, b, [](bool x, bool y) { return x && !y; });
}

Dfa complement(const Dfa& a) {
    std::vector<bool> accepting(a.num_states());
    for (std::size_t q = 0; q < a.num_states(); ++q) accepting[q] = !a.accepting(q);
    return a.with_accepting(std::move(accepting));
}

std::optional<Word> equivalent(const Dfa& a, const Dfa& b) {
    return shortest_product_word(a, b, [](bool x, bool y) { return x != y; });
}

std::optional<Word> equivalent3(const ThreeDfa& a, const ThreeDfa& b) {
    require_same_alphabet(a.alphabet(), b.alphabet());
    const std::size_t k = a.alphabet().size();
    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<StateId> parent;
    std::vector<Letter> via;
    auto intern = [&](StateId qa, StateId qb, StateId from, Letter letter) {
        auto [it, inserted] =
            index.emplace(std::make_pair(qa, qb), static_cast<StateId>(pairs.size()));
        if (inserted) {
            pairs.emplace_back(qa, qb);
            parent.push_back(from);
            via.push_back(letter);
        }
        return it->second;
    };

    intern(a.initial(), b.initial(), kNone, 0);
    if (a.label(a.initial()) != b.label(b.initial())) return Word{};
    for (std::size_t head = 0; head < pairs.size(); ++head) {
        const auto [qa, qb] = pairs[head];
        for (std::size_t l = 0; l < k; ++l) {
            const StateId ta = a.next(qa, static_cast<Letter>(l));
            const StateId tb = b.next(qb, static_cast<Letter>(l));
            const std::size_t before = pairs.size();
            const StateId p = intern(ta, tb, static_cast<StateId>(head), static_cast<Letter>(l));
            if (pairs.size() > before && a.label(ta) != b.label(tb)) {
                Word w;
                StateId cur = p;
                while (parent[cur] != kNone) {
                    w.push_back(via[cur]);
                    cur = parent[cur];
                }
                std::reverse(w.begin(), w.end());
                return w;
            }
        }
    }
    return std::nullopt;
}

Dfa minimize(const Dfa& a) {
    const std::size_t k = a.alphabet().size();
    auto [renumber, reachable] = bfs_order(a.transitions(), a.num_states(), k, a.initial());
    (void)renumber;

    // Seed partition: acceptance, densely numbered by first appearance.
    std::vector<StateId> cls(a.num_states(), kNone);
    StateId acc_class = kNone, rej_class = kNone, dense = 0;
    for (StateId q : reachable) {
        StateId& slot = a.accepting(q) ? acc_class : rej_class;
        if (slot == kNone) slot = dense++;
        cls[q] = slot;
    }
    cls = refine_partition(a.transitions(), k, reachable, std::move(cls));

    StateId num_classes = 0;
    for (StateId q : reachable) num_classes = std::max(num_classes, cls[q] + 1);
    std::vector<StateId> rep(num_classes, kNone);
    for (StateId q : reachable) {
        if (rep[cls[q]] == kNone) rep[cls[q]] = q;
    }
    std::vector<StateId> transitions(num_classes * k);
    std::vector<bool> accepting(num_classes);
    for (StateId c = 0; c < num_classes; ++c) {
        const StateId q = rep[c];
        accepting[c] = a.accepting(q);
        for (std::size_t l = 0; l < k; ++l) {
            transitions[c * k + l] = cls[a.next(q, static_cast<Letter>(l))];
        }
    }
    return canonicalize(Dfa(a.alphabet(), cls[a.initial()], std::move(transitions),
                            std::move(accepting)));
}

ThreeDfa minimize3(const ThreeDfa& a) {
    const std::size_t k = a.alphabet().size();
    auto [renumber, reachable] = bfs_order(a.transitions(), a.num_states(), k, a.initial());
    (void)renumber;

    std::vector<StateId> cls(a.num_states(), kNone);
    StateId label_class[3] = {kNone, kNone, kNone};
    StateId dense = 0;
    for (StateId q : reachable) {
        StateId& slot = label_class[static_cast<int>(a.label(q))];
        if (slot == kNone) slot = dense++;
        cls[q] = slot;
    }
    cls = refine_partition(a.transitions(), k, reachable, std::move(cls));

    StateId num_classes = 0;
    for (StateId q : reachable) num_classes = std::max(num_classes, cls[q] + 1);
    std::vector<StateId> rep(num_classes, kNone);
    for (StateId q : reachable) {
        if (rep[cls[q]] == kNone) rep[cls[q]] = q;
    }
    std::vector<StateId> transitions(num_classes * k);
    std::vector<Label> labels(num_classes);
    for (StateId c = 0; c < num_classes; ++c) {
        const StateId q = rep[c];
        labels[c] = a.label(q);
        for (std::size_t l = 0; l < k; ++l) {
            transitions[c * k + l] = cls[a.next(q, static_cast<Letter>(l))];
        }
    }
    return canonicalize3(ThreeDfa(a.alphabet(), cls[a.initial()], std::move(transitions),
                                  std::move(labels)));
}

Dfa canonicalize(const Dfa& a) {
    const std::size_t k = a.alphabet().size();
    auto [renumber, order] = bfs_order(a.transitions(), a.num_states(), k, a.initial());
    std::vector<StateId> transitions(order.size() * k);
    std::vector<bool> accepting(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId q = order[i];
        accepting[i] = a.accepting(q);
        for (std::size_t l = 0; l < k; ++l) {
            transitions[i * k + l] = renumber[a.next(q, static_cast<Letter>(l))];
        }
    }
    return Dfa(a.alphabet(), 0, std::move(transitions), std::move(accepting));
}

ThreeDfa canonicalize3(const ThreeDfa& a) {
    const std::size_t k = a.alphabet().size();
    auto [renumber, order] = bfs_order(a.transitions(), a.num_states(), k, a.initial());
    std::vector<StateId> transitions(order.size() * k);
    std::vector<Label> labels(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const StateId q = order[i];
        labels[i] = a.label(q);
        for (std::size_t l = 0; l < k; ++l) {
            transitions[i * k + l] = renumber[a.next(q, static_cast<Letter>(l))];
        }
    }
    return ThreeDfa(a.alphabet(), 0, std::move(transitions), std::move(labels));
}

Dfa make_extension_closed(const Dfa& a) {
    const std::size_t k = a.alphabet().size();
    std::vector<StateId> transitions = a.transitions();
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (!a.accepting(q)) continue;
        for (std::size_t l = 0; l < k; ++l) transitions[q * k + l] = q;
    }
    return Dfa(a.alphabet(), a.initial(), std::move(transitions), a.accepting_states());
}

namespace {

// Tarjan's algorithm; emits components in completion order, which is reverse
// topological order of the condensation.
struct TarjanState {
    const std::vector<StateId>& transitions;
    std::size_t num_letters;
    std::vector<StateId> index, lowlink;
    std::vector<bool> on_stack;
    std::vector<StateId> stack;
    StateId next_index = 0;
    std::vector<std::vector<StateId>> components;

    explicit TarjanState(const std::vector<StateId>& t, std::size_t k, std::size_t n)
        : transitions(t), num_letters(k), index(n, kNone), lowlink(n, 0), on_stack(n, false) {}

    void visit(StateId v) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t l = 0; l < num_letters; ++l) {
            const StateId w = transitions[v * num_letters + l];
            if (index[w] == kNone) {
                visit(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack[w]) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<StateId> component;
            StateId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                component.push_back(w);
            } while (w != v);
            std::sort(component.begin(), component.end());
            components.push_back(std::move(component));
        }
    }
};

} // namespace

std::vector<std::vector<StateId>> scc(const ThreeDfa& a) {
    TarjanState t(a.transitions(), a.alphabet().size(), a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (t.index[q] == kNone) t.visit(q);
    }
    return std::move(t.components);
}

std::vector<StateId> backward_reachability(const ThreeDfa& a,
                                           const std::vector<StateId>& targets) {
    const std::size_t k = a.alphabet().size();
    std::vector<std::vector<StateId>> reverse(a.num_states());
    for (StateId q = 0; q < a.num_states(); ++q) {
        for (std::size_t l = 0; l < k; ++l) {
            reverse[a.next(q, static_cast<Letter>(l))].push_back(q);
        }
    }
    std::vector<bool> seen(a.num_states(), false);
    std::deque<StateId> queue;
    for (StateId q : targets) {
        if (q >= a.num_states()) throw std::invalid_argument("target state out of range");
        if (!seen[q]) {
            seen[q] = true;
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (StateId p : reverse[q]) {
            if (!seen[p]) {
                seen[p] = true;
                queue.push_back(p);
            }
        }
    }
    std::vector<StateId> out;
    for (StateId q = 0; q < a.num_states(); ++q) {
        if (seen[q]) out.push_back(q);
    }
    return out;
}

} // namespace bugdesc
