#ifndef GIBBSLAB_ERRORS_HPP
#define GIBBSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gibbslab {

// Validation failures carry a specific type so callers (and tests) can
// distinguish them from generic logic errors.

struct SelfLoopError : std::runtime_error {
    explicit SelfLoopError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateEdgeError : std::runtime_error {
    explicit DuplicateEdgeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DisconnectedError : std::runtime_error {
    explicit DisconnectedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IncompleteBoundaryError : std::runtime_error {
    explicit IncompleteBoundaryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotConvergedError : std::runtime_error {
    explicit NotConvergedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantViolationError : std::runtime_error {
    explicit InvariantViolationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainMismatchError : std::runtime_error {
    explicit DomainMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InconsistentMarginalsError : std::runtime_error {
    explicit InconsistentMarginalsError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PerturbationInfeasibleError : std::runtime_error {
    explicit PerturbationInfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gibbslab

#endif // GIBBSLAB_ERRORS_HPP
