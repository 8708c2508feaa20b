// Active learning of a 3-valued classification as a ThreeDfa.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "bugdesc/teacher.hpp"
#include "bugdesc/three_dfa.hpp"

namespace bugdesc {

/// Observation table over 3-valued membership answers. Rows are prefix-closed
/// access words (short rows plus their one-letter extensions), columns are a
/// suffix-closed set of distinguishing suffixes starting with the empty word.
class ObservationTable {
  public:
    explicit ObservationTable(Alphabet alphabet);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& short_rows() const { return short_rows_; }
    const std::vector<Word>& suffixes() const { return suffixes_; }

    /// Queries every missing cell.
    void fill(Teacher& teacher);

    /// First one-letter extension (row order, then letter order) whose
    /// signature matches no short row; absent when the table is closed.
    std::optional<Word> closedness_violation() const;

    /// A suffix a·e separating two short rows that currently share a
    /// signature but whose a-extensions differ on e; absent when consistent.
    std::optional<Word> consistency_suffix() const;

    /// Makes a one-letter extension a short row.
    void promote(const Word& row);

    /// Adds a column; no-op if already present.
    void add_suffix(const Word& suffix);

    /// Adds every prefix of `word` as a short row (counterexample handling).
    void add_prefixes(const Word& word);

    /// Builds the hypothesis from a closed and consistent table: one state
    /// per distinct row signature, labeled by the empty-suffix cell.
    ThreeDfa build_hypothesis() const;

    Label cell(const Word& row, const Word& suffix) const;

  private:
    std::vector<Label> signature(const Word& row) const;
    bool is_short_row(const Word& row) const;

    Alphabet alphabet_;
    std::vector<Word> short_rows_;
    std::vector<Word> suffixes_;
    std::map<Word, Label> answers_;
};

/// Learns a ThreeDfa agreeing with the teacher's classification: fill the
/// table, restore closedness and consistency, propose the hypothesis, and on
/// a counterexample add all its prefixes as rows. The result is minimized and
/// canonically numbered. Raises BudgetError when max_rounds equivalence
/// rounds did not converge.
ThreeDfa learn(Teacher& teacher, std::size_t max_rounds = 10000);

} // namespace bugdesc
