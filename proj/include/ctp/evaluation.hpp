#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ctp/learner.hpp"
#include "ctp/policy.hpp"
#include "ctp/spec.hpp"

namespace ctp {

struct InfeasibleEvaluationError : std::runtime_error {
    explicit InfeasibleEvaluationError(const std::string& what)
        : std::runtime_error(what) {}
};

struct OracleTooLargeError : std::runtime_error {
    explicit OracleTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct EvalReport {
    double mean_cost = 0.0;
    double ci_lo = 0.0; // 95% normal-approximation interval
    double ci_hi = 0.0;
    std::size_t rollouts_used = 0;     // connected instances only
    std::size_t rollouts_rejected = 0; // disconnected, ignored
};

struct LearningCurve {
    std::vector<std::pair<std::size_t, EvalReport>> points; // checkpoint order
};

// Average walk distance over `rollouts` instance draws, skipping
// disconnected instances. Rollout r runs on its own stream derived from
// (master_seed, r), so results are bit-identical at any thread count.
EvalReport evaluate(const CtpSpec& spec, const Policy& policy, std::size_t rollouts,
                    std::uint64_t master_seed, unsigned threads = 1);

// Expected walk distance conditioned on connectivity, by exhaustive
// enumeration of instances and walk branches. Requires |E| <= 12 and at most
// 10^6 branches.
double exact_expected_cost(const CtpSpec& spec, const Policy& policy);

// learn once, then evaluate every checkpoint policy with the same
// master seed (paired rollouts across checkpoints).
LearningCurve learning_curve(const CtpSpec& spec, const LearnConfig& config,
                             std::size_t rollouts, std::uint64_t master_seed,
                             ExtractMethod method = ExtractMethod::MapSample,
                             unsigned threads = 1);

} // namespace ctp
