#include "bugdesc/teacher.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"

namespace bugdesc {

namespace {

Label outcome_label(Outcome o) {
    switch (o) {
        case Outcome::Failed: return Label::Acc;
        case Outcome::Passed: return Label::Rej;
        case Outcome::Invalid: return Label::Dont;
    }
    return Label::Dont;
}

Label label_of_word(const ThreeDfa& t, const Word& w) { return t.label_of(w); }

/// Shortest access word per state, BFS in alphabet order; unreachable states
/// have no entry.
std::vector<std::optional<Word>> access_words(const Dfa& d) {
    std::vector<std::optional<Word>> access(d.num_states());
    std::deque<StateId> queue;
    access[d.initial()] = Word{};
    queue.push_back(d.initial());
    while (!queue.empty()) {
        const StateId q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < d.alphabet().size(); ++l) {
            const StateId qq = d.next(q, l);
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

/// Shortest access words of all accepting states, in length-lex order.
std::vector<Word> accepting_witnesses(const Dfa& d) {
    auto access = access_words(d);
    std::vector<Word> words;
    for (StateId q = 0; q < d.num_states(); ++q) {
        if (d.accepting(q) && access[q]) words.push_back(std::move(*access[q]));
    }
    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return words;
}

const char* view_name(Label label) {
    switch (label) {
        case Label::Acc: return "acc";
        case Label::Rej: return "rej";
        case Label::Dont: return "dont";
    }
    return "?";
}

} // namespace

Teacher::Teacher(TestModel model, std::shared_ptr<Sut> sut, std::shared_ptr<TestRepo> repo,
                 EquivalenceConfig config, Transcript transcript)
    : model_(std::move(model)),
      repo_(std::move(repo)),
      sut_(std::make_shared<RepoSut>(std::move(sut), repo_)),
      config_(config),
      transcript_(std::move(transcript)),
      rng_(config.seed) {
    if (!(model_.dfa.alphabet() == repo_->alphabet())) {
        throw AlphabetMismatchError("test model and repo use different alphabets");
    }
    if (auto exact = sut_->exact_languages()) {
        const auto& [valid, failing] = *exact;
        const Dfa acc = minimize(intersect(model_.dfa, failing));
        const Dfa rej = minimize(intersect(model_.dfa, difference(valid, failing)));
        const Dfa dont = minimize(complement(unite(acc, rej)));
        truth_views_ = std::vector<Dfa>{acc, rej, dont};
    }
}

Label Teacher::membership_query(const Word& word) {
    membership_queries_.fetch_add(1);
    if (auto cached = repo_->lookup(word)) {
        const Label label = outcome_label(*cached);
        if (transcript_.enabled()) {
            transcript_.membership(format_word(alphabet(), word), label_name(label), "repo");
        }
        return label;
    }
    if (!model_.dfa.accepts(word)) {
        if (transcript_.enabled()) {
            transcript_.membership(format_word(alphabet(), word), label_name(Label::Dont),
                                   "model");
        }
        return Label::Dont;
    }
    const Label label = outcome_label(sut_->execute(word));
    if (transcript_.enabled()) {
        transcript_.membership(format_word(alphabet(), word), label_name(label), "sut");
    }
    return label;
}

std::optional<Word> Teacher::repo_counterexample(const ThreeDfa& hypothesis) {
    for (const auto& entry : repo_->entries()) {
        const Label truth = outcome_label(entry.outcome);
        if (label_of_word(hypothesis, entry.word) != truth) {
            if (transcript_.enabled()) {
                transcript_.counterexample(format_word(alphabet(), entry.word), "repo");
            }
            return entry.word;
        }
    }
    return std::nullopt;
}

std::optional<Word> Teacher::model_containment_counterexample(const ThreeDfa& hypothesis) {
    const Dfa claimed = hypothesis.view({Label::Acc, Label::Rej});
    const Dfa& t = model_.dfa;
    const std::size_t product_states =
        static_cast<std::size_t>(claimed.num_states()) * t.num_states();
    if (product_states <= config_.exact_subset_threshold) {
        // Words the hypothesis claims to classify but which lie outside the
        // test model. Each accepting state of the difference gives a witness;
        // a witness only counts if the membership answer disagrees with the
        // hypothesis, so a repo preloaded with out-of-model entries cannot
        // feed the learner words it would classify the same way.
        const Dfa outside = difference(claimed, t);
        for (const Word& w : accepting_witnesses(outside)) {
            if (membership_query(w) != label_of_word(hypothesis, w)) {
                if (transcript_.enabled()) {
                    transcript_.counterexample(format_word(alphabet(), w), "subset");
                }
                return w;
            }
        }
        return std::nullopt;
    }
    // Product too large: sample random words from the claimed views instead.
    const auto access = access_words(claimed);
    std::vector<StateId> targets;
    for (StateId q = 0; q < claimed.num_states(); ++q) {
        if (claimed.accepting(q) && access[q]) targets.push_back(q);
    }
    if (targets.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick_target(0, targets.size() - 1);
    std::uniform_int_distribution<Letter> pick_letter(0, alphabet().size() - 1);
    std::geometric_distribution<std::size_t> infix_length(
        1.0 / (static_cast<double>(config_.expected_walk_extra_depth) + 1.0));
    for (std::size_t i = 0; i < config_.walks_per_view; ++i) {
        Word w = *access[targets[pick_target(rng_)]];
        const std::size_t extra = infix_length(rng_);
        for (std::size_t j = 0; j < extra; ++j) w.push_back(pick_letter(rng_));
        if (!claimed.accepts(w) || t.accepts(w)) continue;
        if (membership_query(w) != label_of_word(hypothesis, w)) {
            if (transcript_.enabled()) {
                transcript_.counterexample(format_word(alphabet(), w), "subset");
            }
            return w;
        }
    }
    return std::nullopt;
}

std::optional<Word> Teacher::view_counterexample(const ThreeDfa& hypothesis, Label label,
                                                 std::mt19937_64& rng) {
    const Dfa view = hypothesis.view(label);
    std::optional<Word> found;
    if (truth_views_) {
        const Dfa& truth = (*truth_views_)[static_cast<std::size_t>(label)];
        const Dfa disagreements =
            product_combine(view, truth, [](bool a, bool b) { return a != b; });
        for (const Word& w : accepting_witnesses(disagreements)) {
            if (membership_query(w) != label_of_word(hypothesis, w)) {
                found = w;
                break;
            }
        }
    } else {
        found = random_w_method(
            view, [this](const Word& w) { return membership_query(w); }, label, config_, rng);
    }
    if (found) {
        assert(membership_query(*found) != label_of_word(hypothesis, *found));
        if (transcript_.enabled()) {
            transcript_.counterexample(format_word(alphabet(), *found), view_name(label));
        }
    }
    return found;
}

std::optional<Word> Teacher::equivalence_query(const ThreeDfa& hypothesis) {
    if (!(hypothesis.alphabet() == alphabet())) {
        throw AlphabetMismatchError("hypothesis alphabet differs from the teacher's");
    }
    equivalence_queries_.fetch_add(1);
    if (auto w = repo_counterexample(hypothesis)) return w;
    if (auto w = model_containment_counterexample(hypothesis)) return w;

    static constexpr Label kViews[] = {Label::Acc, Label::Rej, Label::Dont};
    if (!config_.concurrent_views) {
        for (Label label : kViews) {
            if (auto w = view_counterexample(hypothesis, label, rng_)) return w;
        }
        return std::nullopt;
    }

    // Race the three view checks; the first counterexample found wins.
    std::mutex mutex;
    std::optional<Word> winner;
    std::vector<std::thread> workers;
    const std::uint64_t base_seed = rng_();
    for (std::size_t i = 0; i < 3; ++i) {
        workers.emplace_back([&, i] {
            std::mt19937_64 rng(base_seed + i);
            auto w = view_counterexample(hypothesis, kViews[i], rng);
            if (w) {
                std::lock_guard<std::mutex> lock(mutex);
                if (!winner) winner = std::move(w);
            }
        });
    }
    for (auto& worker : workers) worker.join();
    return winner;
}

std::optional<Word> random_w_method(const Dfa& view,
                                    const std::function<Label(const Word&)>& truth, Label label,
                                    const EquivalenceConfig& config, std::mt19937_64& rng) {
    const auto access = access_words(view);
    std::vector<StateId> reachable;
    for (StateId q = 0; q < view.num_states(); ++q) {
        if (access[q]) reachable.push_back(q);
    }
    if (reachable.empty()) return std::nullopt;

    // Characterization set: a shortest distinguishing word for every pair of
    // inequivalent states, found by BFS over state pairs.
    std::vector<Word> distinguishers;
    {
        const std::size_t n = view.num_states();
        const std::size_t k = view.alphabet().size();
        std::vector<std::optional<Word>> dist(n * n);
        std::deque<std::pair<StateId, StateId>> queue;
        for (StateId p = 0; p < n; ++p) {
            for (StateId q = 0; q < n; ++q) {
                if (view.accepting(p) != view.accepting(q)) {
                    dist[p * n + q] = Word{};
                    queue.emplace_back(p, q);
                }
            }
        }
        // Work backwards: if (p', q') is distinguished by w then any (p, q)
        // stepping into it on letter a is distinguished by a·w.
        std::vector<std::vector<std::pair<StateId, StateId>>> rev(n * n);
        for (StateId p = 0; p < n; ++p) {
            for (StateId q = 0; q < n; ++q) {
                for (Letter a = 0; a < k; ++a) {
                    rev[view.next(p, a) * n + view.next(q, a)].emplace_back(p, q);
                }
            }
        }
        // BFS from the base pairs along reversed steps.
        while (!queue.empty()) {
            const auto [p, q] = queue.front();
            queue.pop_front();
            for (const auto& [pp, qq] : rev[p * n + q]) {
                if (!dist[pp * n + qq]) {
                    // Find the letter that steps (pp, qq) into (p, q).
                    for (Letter a = 0; a < k; ++a) {
                        if (view.next(pp, a) == p && view.next(qq, a) == q) {
                            Word w;
                            w.push_back(a);
                            w.insert(w.end(), dist[p * n + q]->begin(), dist[p * n + q]->end());
                            dist[pp * n + qq] = std::move(w);
                            queue.emplace_back(pp, qq);
                            break;
                        }
                    }
                }
            }
        }
        std::set<Word> unique;
        for (auto& d : dist) {
            if (d && !d->empty()) unique.insert(*d);
        }
        unique.insert(Word{});
        distinguishers.assign(unique.begin(), unique.end());
    }

    std::uniform_int_distribution<std::size_t> pick_state(0, reachable.size() - 1);
    std::uniform_int_distribution<Letter> pick_letter(0, view.alphabet().size() - 1);
    std::uniform_int_distribution<std::size_t> pick_suffix(0, distinguishers.size() - 1);
    std::bernoulli_distribution use_distinguisher(0.5);
    std::geometric_distribution<std::size_t> infix_length(
        1.0 / (static_cast<double>(config.expected_walk_extra_depth) + 1.0));
    for (std::size_t i = 0; i < config.walks_per_view; ++i) {
        Word w = *access[reachable[pick_state(rng)]];
        const std::size_t extra = infix_length(rng);
        for (std::size_t j = 0; j < extra; ++j) w.push_back(pick_letter(rng));
        if (use_distinguisher(rng)) {
            const Word& suffix = distinguishers[pick_suffix(rng)];
            w.insert(w.end(), suffix.begin(), suffix.end());
        } else {
            const std::size_t tail = infix_length(rng);
            for (std::size_t j = 0; j < tail; ++j) w.push_back(pick_letter(rng));
        }
        const bool claimed = view.accepts(w);
        const bool actual = truth(w) == label;
        if (claimed != actual) return w;
    }
    return std::nullopt;
}

} // namespace bugdesc
