#ifndef CONSLAW_ERRORS_HPP
#define CONSLAW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conslaw {

// Bad user input: malformed flags, inconsistent sizes, violated preconditions.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file contents (CSV parse failures carry row/column info in the message).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Function evaluated outside its natural domain (ln of a nonpositive state, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-finite states during integration, SVD non-convergence,
// rank-deficient pivots.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Run-level configuration problems (all candidates skipped, unknown system name).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace conslaw

#endif
