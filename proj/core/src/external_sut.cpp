#include "bugdesc/external_sut.hpp"

#include <cerrno>
#include <cstring>
#include <utility>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "bugdesc/errors.hpp"

namespace bugdesc {

ExternalSut::ExternalSut(Alphabet alphabet, const std::string& command, int timeout_ms)
    : alphabet_(std::move(alphabet)), command_(command), timeout_ms_(timeout_ms) {
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
        throw TransportError("cannot create pipes: " + std::string(std::strerror(errno)));
    }
    pid_ = fork();
    if (pid_ < 0) throw TransportError("fork failed: " + std::string(std::strerror(errno)));
    if (pid_ == 0) {
        // Lead a fresh process group so shutdown() can signal the shell and
        // any helpers it forks in one sweep.
        setpgid(0, 0);
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        // Keep stderr for diagnostics; drop every other inherited descriptor
        // (pipe ends, sockets of sibling systems, ...).
        const int max_fd = static_cast<int>(sysconf(_SC_OPEN_MAX));
        for (int fd = 3; fd < max_fd; ++fd) close(fd);
        execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    setpgid(pid_, pid_);
    close(to_child[0]);
    close(from_child[1]);
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    signal(SIGPIPE, SIG_IGN);
    try {
        reset();
    } catch (...) {
        // No destructor runs when a constructor throws; reap the child here
        // so it cannot linger holding inherited descriptors.
        shutdown();
        throw;
    }
}

ExternalSut::~ExternalSut() { shutdown(); }

void ExternalSut::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
        // The shell may have forked the command rather than exec'd it, so
        // signal its whole process group; a plain kill would orphan those
        // grandchildren holding our inherited descriptors.
        if (kill(-pid_, SIGTERM) != 0) kill(pid_, SIGTERM);
        waitpid(pid_, nullptr, 0);
        pid_ = -1;
    }
}

void ExternalSut::send_line(const std::string& line) {
    std::string data = line + "\n";
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n = write(to_child_, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw TransportError("write to system under test failed: " +
                                 std::string(std::strerror(errno)));
        }
        off += static_cast<std::size_t>(n);
    }
}

std::string ExternalSut::read_line() {
    for (;;) {
        const auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        struct pollfd pfd{from_child_, POLLIN, 0};
        const int ready = poll(&pfd, 1, timeout_ms_);
        if (ready < 0) {
            if (errno == EINTR) continue;
            throw TransportError("poll failed: " + std::string(std::strerror(errno)));
        }
        if (ready == 0) {
            throw TransportError("system under test did not reply within " +
                                 std::to_string(timeout_ms_) + "ms");
        }
        char chunk[4096];
        const ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n < 0) {
            if (errno == EINTR) continue;
            throw TransportError("read from system under test failed: " +
                                 std::string(std::strerror(errno)));
        }
        if (n == 0) throw TransportError("system under test closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

void ExternalSut::reset() {
    send_line("RESET");
    const std::string reply = read_line();
    if (reply != "OK") throw TransportError("expected OK after RESET, got '" + reply + "'");
}

Outcome ExternalSut::execute(const Word& word) {
    std::string line = "RUN";
    for (Letter l : word) {
        if (l >= alphabet_.size()) throw AlphabetMismatchError("letter outside the alphabet");
        line += ' ';
        line += alphabet_.name(l);
    }
    send_line(line);
    const std::string reply = read_line();
    Outcome outcome;
    if (reply == "PASS") {
        outcome = Outcome::Passed;
    } else if (reply == "FAIL") {
        outcome = Outcome::Failed;
    } else if (reply == "INVALID") {
        outcome = Outcome::Invalid;
    } else {
        throw TransportError("unexpected reply '" + reply + "'");
    }
    reset();
    return outcome;
}

} // namespace bugdesc
