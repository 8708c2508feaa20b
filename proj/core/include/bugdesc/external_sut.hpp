// Driving an out-of-process system under test over a line protocol.
#pragma once

#include <cstddef>
#include <string>

#include "bugdesc/sut.hpp"

namespace bugdesc {

/// Talks to a child process over stdin/stdout using a line protocol:
///
///   -> RESET\n                 (on startup and between tests)
///   <- OK\n
///   -> RUN <letter letter ...>\n
///   <- PASS\n | FAIL\n | INVALID\n
///
/// Any other reply, EOF, process death, or a reply not arriving within the
/// timeout raises TransportError.
class ExternalSut final : public Sut {
  public:
    /// Starts `command` via /bin/sh -c and performs the initial RESET.
    ExternalSut(Alphabet alphabet, const std::string& command, int timeout_ms = 10000);
    ~ExternalSut() override;

    ExternalSut(const ExternalSut&) = delete;
    ExternalSut& operator=(const ExternalSut&) = delete;

    const Alphabet& alphabet() const override { return alphabet_; }
    Outcome execute(const Word& word) override;

  private:
    void send_line(const std::string& line);
    std::string read_line();
    void reset();
    void shutdown();

    Alphabet alphabet_;
    std::string command_;
    int timeout_ms_;
    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

} // namespace bugdesc
