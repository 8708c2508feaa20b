// Structured learning log written as one JSON object per line.
#pragma once

#include <cstddef>
#include <memory>
#include <string>

namespace bugdesc {

/// Optional JSONL log of what the learner did: every membership query with the
/// source of its answer, counterexamples with the check that produced them,
/// per-round table and hypothesis sizes, and a final summary. A default
/// constructed transcript discards everything. Copies share the same file and
/// writes are serialized, so one transcript can be handed to concurrent tasks.
class Transcript {
  public:
    Transcript() = default;
    explicit Transcript(const std::string& path);

    bool enabled() const { return sink_ != nullptr; }

    /// source is "repo", "model", or "sut".
    void membership(const std::string& word, const std::string& label, const std::string& source);
    /// check is "repo", "subset", or one of the view names "acc", "rej", "dont".
    void counterexample(const std::string& word, const std::string& check);
    void round(std::size_t round, std::size_t rows, std::size_t suffixes,
               std::size_t hypothesis_states);
    void done(std::size_t rounds, std::size_t states, std::size_t membership_queries,
              std::size_t sut_executions);

  private:
    struct Sink;
    void write(const std::string& line);

    std::shared_ptr<Sink> sink_;
};

} // namespace bugdesc
