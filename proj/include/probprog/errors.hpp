#pragma once

#include <stdexcept>
#include <string>

namespace probprog {

// A program exceeded its choice-point budget; the model likely fails to
// terminate.
struct RunawayProgramError : std::runtime_error {
    explicit RunawayProgramError(const std::string& what)
        : std::runtime_error(what) {}
};

// Initialization or an internal retry loop could not find a feasible
// execution.
struct ModelInfeasibleError : std::runtime_error {
    explicit ModelInfeasibleError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace probprog
