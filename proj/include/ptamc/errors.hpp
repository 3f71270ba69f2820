#pragma once

#include <stdexcept>
#include <string>

namespace ptamc {

// Model-level validation failures (well-formedness, determinism, totality,
// malformed documents). The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Refusals: constraints the region engine cannot handle (diagonals), the
// digital oracle's strictness restriction, size caps. CLI exit code 3.
struct UnsupportedConstraintError : std::runtime_error {
    explicit UnsupportedConstraintError(const std::string& msg)
        : std::runtime_error(msg) {}
};

struct SolverRefusal : std::runtime_error {
    explicit SolverRefusal(const std::string& msg) : std::runtime_error(msg) {}
};

// A scheduler returned a disabled choice.
struct SchedulerContractError : std::runtime_error {
    explicit SchedulerContractError(const std::string& msg)
        : std::runtime_error(msg) {}
};

}  // namespace ptamc
