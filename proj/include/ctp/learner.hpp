#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ctp/dfs.hpp"
#include "ctp/policy.hpp"
#include "ctp/spec.hpp"
#include "probprog/inference.hpp"

namespace ctp {

struct LearnConfig {
    std::size_t iterations = 10'000;
    double burn_in_fraction = 0.10;   // in [0,1)
    double cost_scale = 1.0;          // sigma multiplying cost in the score
    std::vector<std::size_t> checkpoints; // sorted, within [1, iterations]
    std::uint64_t seed = 0;

    void validate() const;
    std::size_t burn_in(std::size_t upto) const {
        return static_cast<std::size_t>(burn_in_fraction * static_cast<double>(upto));
    }
};

// Streaming per-coordinate statistics of policy samples plus the
// best-scoring sample seen.
class PolicyPosterior {
public:
    PolicyPosterior() = default;
    explicit PolicyPosterior(const CtpSpec& spec);

    void add_sample(const Policy& policy, double log_joint);

    std::size_t sample_count() const { return count_; }
    // Per node (spec order), per canonical coordinate.
    const std::vector<std::vector<double>>& mean() const { return mean_; }
    std::vector<std::vector<double>> variance() const; // population variance
    const Policy& best_policy() const;
    double best_log_joint() const { return best_log_joint_; }

private:
    std::size_t count_ = 0;
    std::vector<std::vector<double>> mean_;
    std::vector<std::vector<double>> m2_;
    Policy best_;
    double best_log_joint_ = 0.0;
};

enum class ExtractMethod { MapSample, PosteriorMean };

// Registers observing 1 from Bernoulli(e^{-scale*cost}); the contributed
// log likelihood is exactly -scale*cost.
void score(probprog::ChoiceSource& choices, double cost, double scale);

// The learning model: draw a Dirichlet policy per node, redraw instances
// until a connected one comes up (attempt budget 10,000), walk it with
// stdfs, and score the travelled distance. Output is the Policy.
probprog::Program build_model(const CtpSpec& spec, double scale);

struct LearnResult {
    PolicyPosterior posterior;              // statistics of the full run
    std::map<std::size_t, Policy> checkpoint_policies;
};

// Runs the MH chain over build_model. The policy stored for checkpoint c is
// extracted from the samples a c-iteration run would have kept (burn-in
// scaled to c), so checkpoints reproduce shorter runs exactly.
LearnResult learn(const CtpSpec& spec, const LearnConfig& config,
                  ExtractMethod checkpoint_method = ExtractMethod::MapSample);

// MapSample returns the best-scoring sample; PosteriorMean returns the mean
// vectors renormalized to sum exactly to 1.
Policy extract_policy(const PolicyPosterior& posterior,
                      ExtractMethod method = ExtractMethod::MapSample);

} // namespace ctp
