#pragma once

#include <cstddef>
#include <functional>

#include "probprog/errors.hpp"
#include "probprog/program.hpp"
#include "probprog/random.hpp"
#include "probprog/trace.hpp"

namespace probprog {

// Hard cap on sample statements per execution; exceeding it raises
// RunawayProgramError.
inline constexpr std::size_t kDefaultStepBudget = 10'000'000;

// Executes the program once, answering every sample request from the prior.
Trace run_forward(const Program& program, RandomSource& rng,
                  std::size_t step_budget = kDefaultStepBudget);

struct MhResult {
    Trace trace;    // new trace if accepted, copy of the input otherwise
    bool accepted;
};

// One single-site Metropolis-Hastings transition: pick one of the N latent
// entries uniformly, resample it from its prior, re-execute the program
// reusing matching addresses, and accept with probability min(1, exp(delta))
// where
//   delta = log_joint(new) - log_joint(old) + log N_old - log N_new
//         + sum log_prior(old entries not reused)
//         - sum log_prior(fresh draws, proposal site excluded).
MhResult mh_step(const Program& program, const Trace& current, RandomSource& rng,
                 std::size_t step_budget = kDefaultStepBudget);

// Called after every transition with (1-based iteration, current trace,
// accepted flag).
using ChainObserver = std::function<void(std::size_t, const Trace&, bool)>;

// Initializes by rejection (forward runs until the joint is finite; gives up
// after 10,000 attempts), then applies `iterations` MH steps.
Trace run_chain(const Program& program, std::size_t iterations, RandomSource& rng,
                const ChainObserver& observer = {},
                std::size_t step_budget = kDefaultStepBudget);

} // namespace probprog
