// Minimally-adequate teacher answering 3-valued membership and equivalence queries.
#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "bugdesc/test_model.hpp"
#include "bugdesc/test_repo.hpp"
#include "bugdesc/three_dfa.hpp"
#include "bugdesc/transcript.hpp"

namespace bugdesc {

/// Knobs for the randomized equivalence checking heuristics.
struct EquivalenceConfig {
    std::uint64_t seed = 42;
    /// Candidate words tried per hypothesis view when checking heuristically.
    std::size_t walks_per_view = 1000;
    /// Mean length of the random infix appended to a state's access word.
    std::size_t expected_walk_extra_depth = 4;
    /// Maximum product state count for which test-model containment is
    /// decided exactly; larger products fall back to random sampling.
    std::size_t exact_subset_threshold = 100000;
    /// Race the three per-view checks on separate threads. Faster on slow
    /// systems under test, but results are not reproducible run to run.
    bool concurrent_views = false;
};

/// Answers the learner's queries about an unknown 3-valued classification of
/// test words: failing (Acc), passing (Rej), or out of scope (Dont).
///
/// Membership answers come, in order, from the repo, from the test model
/// (w outside the model is Dont, never executed), and finally from executing
/// the system under test; executions are cached in the repo.
///
/// Equivalence checking runs these stages in order, returning the first
/// genuine counterexample (a word whose membership answer disagrees with the
/// hypothesis label):
///   1. scan the repo in insertion order;
///   2. check that the Acc and Rej views only claim words inside the test
///      model, exactly when the product is small enough, else by sampling;
///   3.-5. compare each view (Acc, Rej, Dont) against the true language when
///      the system exposes exact languages, else search with random walks.
class Teacher {
  public:
    Teacher(TestModel model, std::shared_ptr<Sut> sut, std::shared_ptr<TestRepo> repo,
            EquivalenceConfig config = {}, Transcript transcript = {});

    const Alphabet& alphabet() const { return model_.dfa.alphabet(); }
    const TestModel& test_model() const { return model_; }
    const TestRepo& repo() const { return *repo_; }
    const EquivalenceConfig& config() const { return config_; }
    Transcript& transcript() { return transcript_; }

    Label membership_query(const Word& word);
    std::optional<Word> equivalence_query(const ThreeDfa& hypothesis);

    std::size_t membership_queries() const { return membership_queries_.load(); }
    std::size_t equivalence_queries() const { return equivalence_queries_.load(); }
    /// Words actually run on the wrapped system (repo and model hits excluded).
    std::size_t sut_executions() const { return sut_->executions(); }

  private:
    std::optional<Word> repo_counterexample(const ThreeDfa& hypothesis);
    std::optional<Word> model_containment_counterexample(const ThreeDfa& hypothesis);
    std::optional<Word> view_counterexample(const ThreeDfa& hypothesis, Label label,
                                            std::mt19937_64& rng);

    TestModel model_;
    std::shared_ptr<TestRepo> repo_;
    std::shared_ptr<RepoSut> sut_;
    EquivalenceConfig config_;
    Transcript transcript_;
    std::mt19937_64 rng_;
    /// Exact per-label languages of the true classification, when available.
    std::optional<std::vector<Dfa>> truth_views_;
    std::atomic<std::size_t> membership_queries_{0};
    std::atomic<std::size_t> equivalence_queries_{0};
};

/// Randomized conformance search between a hypothesis view and a 3-valued
/// ground truth. Generates up to walks_per_view words, each built from a
/// random state's access word, a random infix of geometric length, and a
/// distinguishing or random suffix, and returns the first word where
/// truth(w) == label differs from the view accepting w. Deterministic for a
/// fixed rng state.
std::optional<Word> random_w_method(const Dfa& view,
                                    const std::function<Label(const Word&)>& truth, Label label,
                                    const EquivalenceConfig& config, std::mt19937_64& rng);

} // namespace bugdesc
