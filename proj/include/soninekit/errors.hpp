#ifndef SONINEKIT_ERRORS_HPP
#define SONINEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soninekit {

/// Thrown when an input violates the mathematical hypotheses a solver
/// requires (identically vanishing kernel directions, missing or
/// non-invertible small-time limits, singular step matrices).
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File or format problems on the CLI surface.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace soninekit

#endif
