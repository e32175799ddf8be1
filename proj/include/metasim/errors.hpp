#ifndef METASIM_ERRORS_HPP
#define METASIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace metasim {

// Bad arguments or inconsistent domain objects (L > N, probabilities that
// do not sum to one, stale witnesses, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file content. Carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(format(what, line)), line_(line) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}

    std::size_t line() const { return line_; }

private:
    static std::string format(const std::string& what, std::size_t line) {
        return "line " + std::to_string(line) + ": " + what;
    }
    std::size_t line_;
};

// Filesystem failures (missing file, unwritable output path).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace metasim

#endif
