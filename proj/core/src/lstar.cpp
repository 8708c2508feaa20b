#include "bugdesc/lstar.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

#include "bugdesc/dfa_ops.hpp"
#include "bugdesc/errors.hpp"

namespace bugdesc {

namespace {

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

Word extend(const Word& a, Letter l) {
    Word w = a;
    w.push_back(l);
    return w;
}

} // namespace

ObservationTable::ObservationTable(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    short_rows_.push_back(Word{});
    suffixes_.push_back(Word{});
}

void ObservationTable::fill(Teacher& teacher) {
    auto fill_row = [&](const Word& row) {
        for (const Word& suffix : suffixes_) {
            const Word w = concat(row, suffix);
            if (answers_.find(w) == answers_.end()) {
                answers_.emplace(w, teacher.membership_query(w));
            }
        }
    };
    for (const Word& row : short_rows_) {
        fill_row(row);
        for (Letter l = 0; l < alphabet_.size(); ++l) fill_row(extend(row, l));
    }
}

Label ObservationTable::cell(const Word& row, const Word& suffix) const {
    auto it = answers_.find(concat(row, suffix));
    assert(it != answers_.end());
    return it->second;
}

std::vector<Label> ObservationTable::signature(const Word& row) const {
    std::vector<Label> sig;
    sig.reserve(suffixes_.size());
    for (const Word& suffix : suffixes_) sig.push_back(cell(row, suffix));
    return sig;
}

bool ObservationTable::is_short_row(const Word& row) const {
    return std::find(short_rows_.begin(), short_rows_.end(), row) != short_rows_.end();
}

std::optional<Word> ObservationTable::closedness_violation() const {
    std::set<std::vector<Label>> short_signatures;
    for (const Word& row : short_rows_) short_signatures.insert(signature(row));
    for (const Word& row : short_rows_) {
        for (Letter l = 0; l < alphabet_.size(); ++l) {
            const Word ext = extend(row, l);
            if (short_signatures.find(signature(ext)) == short_signatures.end()) return ext;
        }
    }
    return std::nullopt;
}

std::optional<Word> ObservationTable::consistency_suffix() const {
    for (std::size_t i = 0; i < short_rows_.size(); ++i) {
        for (std::size_t j = i + 1; j < short_rows_.size(); ++j) {
            if (signature(short_rows_[i]) != signature(short_rows_[j])) continue;
            for (Letter l = 0; l < alphabet_.size(); ++l) {
                const Word a = extend(short_rows_[i], l);
                const Word b = extend(short_rows_[j], l);
                for (std::size_t e = 0; e < suffixes_.size(); ++e) {
                    if (cell(a, suffixes_[e]) != cell(b, suffixes_[e])) {
                        Word suffix;
                        suffix.push_back(l);
                        suffix.insert(suffix.end(), suffixes_[e].begin(), suffixes_[e].end());
                        return suffix;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

void ObservationTable::promote(const Word& row) {
    if (!is_short_row(row)) short_rows_.push_back(row);
}

void ObservationTable::add_suffix(const Word& suffix) {
    if (std::find(suffixes_.begin(), suffixes_.end(), suffix) == suffixes_.end()) {
        suffixes_.push_back(suffix);
    }
}

void ObservationTable::add_prefixes(const Word& word) {
    for (std::size_t len = 0; len <= word.size(); ++len) {
        promote(Word(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(len)));
    }
}

ThreeDfa ObservationTable::build_hypothesis() const {
    std::map<std::vector<Label>, StateId> state_of;
    std::vector<const Word*> representative;
    for (const Word& row : short_rows_) {
        auto sig = signature(row);
        if (state_of.emplace(std::move(sig), static_cast<StateId>(representative.size())).second) {
            representative.push_back(&row);
        }
    }
    const std::size_t n = representative.size();
    std::vector<StateId> transitions(n * alphabet_.size());
    std::vector<Label> labels(n);
    for (StateId q = 0; q < n; ++q) {
        const Word& row = *representative[q];
        labels[q] = cell(row, Word{});
        for (Letter l = 0; l < alphabet_.size(); ++l) {
            auto it = state_of.find(signature(extend(row, l)));
            assert(it != state_of.end());
            transitions[q * alphabet_.size() + l] = it->second;
        }
    }
    const StateId initial = state_of.at(signature(Word{}));
    return ThreeDfa(alphabet_, initial, std::move(transitions), std::move(labels));
}

ThreeDfa learn(Teacher& teacher, std::size_t max_rounds) {
    ObservationTable table(teacher.alphabet());
    for (std::size_t round = 1; round <= max_rounds; ++round) {
        for (;;) {
            table.fill(teacher);
            if (auto row = table.closedness_violation()) {
                table.promote(*row);
                continue;
            }
            if (auto suffix = table.consistency_suffix()) {
                table.add_suffix(*suffix);
                continue;
            }
            break;
        }
        const ThreeDfa hypothesis = table.build_hypothesis();
        teacher.transcript().round(round, table.short_rows().size(), table.suffixes().size(),
                                   hypothesis.num_states());
        const auto counterexample = teacher.equivalence_query(hypothesis);
        if (!counterexample) {
            ThreeDfa result = canonicalize3(minimize3(hypothesis));
            teacher.transcript().done(round, result.num_states(), teacher.membership_queries(),
                                      teacher.sut_executions());
            return result;
        }
        table.add_prefixes(*counterexample);
    }
    throw BudgetError("learning did not converge within " + std::to_string(max_rounds) +
                      " rounds");
}

} // namespace bugdesc
