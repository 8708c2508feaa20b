#include "bugdesc/transcript.hpp"

#include <fstream>
#include <mutex>
#include <stdexcept>

#include "json.hpp"

namespace bugdesc {

struct Transcript::Sink {
    std::ofstream out;
    std::mutex mutex;
};

Transcript::Transcript(const std::string& path) : sink_(std::make_shared<Sink>()) {
    sink_->out.open(path, std::ios::trunc);
    if (!sink_->out) throw std::runtime_error("cannot open transcript file '" + path + "'");
}

void Transcript::write(const std::string& line) {
    if (!sink_) return;
    std::lock_guard<std::mutex> lock(sink_->mutex);
    sink_->out << line << '\n';
    sink_->out.flush();
}

void Transcript::membership(const std::string& word, const std::string& label,
                            const std::string& source) {
    if (!sink_) return;
    nlohmann::json j{{"event", "membership"}, {"word", word}, {"label", label},
                     {"source", source}};
    write(j.dump());
}

void Transcript::counterexample(const std::string& word, const std::string& check) {
    if (!sink_) return;
    nlohmann::json j{{"event", "counterexample"}, {"word", word}, {"check", check}};
    write(j.dump());
}

void Transcript::round(std::size_t round, std::size_t rows, std::size_t suffixes,
                       std::size_t hypothesis_states) {
    if (!sink_) return;
    nlohmann::json j{{"event", "round"},
                     {"round", round},
                     {"rows", rows},
                     {"suffixes", suffixes},
                     {"hypothesis_states", hypothesis_states}};
    write(j.dump());
}

void Transcript::done(std::size_t rounds, std::size_t states, std::size_t membership_queries,
                      std::size_t sut_executions) {
    if (!sink_) return;
    nlohmann::json j{{"event", "done"},
                     {"rounds", rounds},
                     {"states", states},
                     {"membership_queries", membership_queries},
                     {"sut_executions", sut_executions}};
    write(j.dump());
}

} // namespace bugdesc
