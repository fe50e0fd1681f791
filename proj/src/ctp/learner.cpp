#include "ctp/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ctp {

void LearnConfig::validate() const {
    if (iterations < 1)
        throw std::invalid_argument("learn: iterations must be >= 1");
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
        throw std::invalid_argument("learn: burn_in_fraction must lie in [0,1)");
    if (!(cost_scale > 0.0))
        throw std::invalid_argument("learn: cost_scale must be positive");
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()))
        throw std::invalid_argument("learn: checkpoints must be sorted");
    for (std::size_t c : checkpoints)
        if (c < 1 || c > iterations)
            throw std::invalid_argument("learn: checkpoint outside [1, iterations]");
}

PolicyPosterior::PolicyPosterior(const CtpSpec& spec) {
    mean_.reserve(spec.node_count());
    for (const Node& node : spec.nodes()) {
        mean_.emplace_back(spec.degree(node.id), 0.0);
        m2_.emplace_back(spec.degree(node.id), 0.0);
    }
}

void PolicyPosterior::add_sample(const Policy& policy, double log_joint) {
    if (mean_.empty() && count_ == 0) {
        // default-constructed accumulator adopts the first sample's shape
        for (const auto& probs : policy.node_probs) {
            mean_.emplace_back(probs.size(), 0.0);
            m2_.emplace_back(probs.size(), 0.0);
        }
    }
    ++count_;
    const double n = static_cast<double>(count_);
    for (std::size_t v = 0; v < policy.node_probs.size(); ++v) {
        for (std::size_t i = 0; i < policy.node_probs[v].size(); ++i) {
            const double x = policy.node_probs[v][i];
            const double delta = x - mean_[v][i];
            mean_[v][i] += delta / n;
            m2_[v][i] += delta * (x - mean_[v][i]); // Welford update
        }
    }
    if (count_ == 1 || log_joint > best_log_joint_) {
        best_ = policy;
        best_log_joint_ = log_joint;
    }
}

std::vector<std::vector<double>> PolicyPosterior::variance() const {
    std::vector<std::vector<double>> var(m2_.size());
    for (std::size_t v = 0; v < m2_.size(); ++v) {
        var[v].reserve(m2_[v].size());
        for (double m2 : m2_[v])
            var[v].push_back(count_ > 0 ? m2 / static_cast<double>(count_) : 0.0);
    }
    return var;
}

const Policy& PolicyPosterior::best_policy() const {
    if (count_ == 0)
        throw std::logic_error("posterior: no samples recorded");
    return best_;
}

void score(probprog::ChoiceSource& choices, double cost, double scale) {
    if (!(cost >= 0.0))
        throw std::invalid_argument("score: cost must be nonnegative");
    choices.observe(probprog::Bernoulli::from_log_p(-scale * cost),
                    probprog::Value{std::int64_t{1}});
}

probprog::Program build_model(const CtpSpec& spec, double scale) {
    constexpr std::int64_t kAttemptBudget = 10'000;
    return [&spec, scale](probprog::ChoiceSource& choices) -> std::any {
        Policy policy;
        policy.node_probs.reserve(spec.node_count());
        for (const Node& node : spec.nodes()) {
            probprog::Value draw = choices.sample(
                probprog::Address::of("policy", node.id),
                probprog::SymmetricDirichlet(spec.degree(node.id)));
            policy.node_probs.push_back(std::get<std::vector<double>>(draw));
        }

        for (std::int64_t attempt = 0; attempt < kAttemptBudget; ++attempt) {
            Instance instance = draw_instance(spec, choices, attempt);
            if (!is_connected(spec, instance)) continue; // ignored instantiation
            WalkResult walk = stdfs(spec, instance, policy, choices, attempt);
            score(choices, walk.distance, scale);
            return policy;
        }
        throw probprog::ModelInfeasibleError(
            "build_model: no connected instance in 10000 attempts");
    };
}

LearnResult learn(const CtpSpec& spec, const LearnConfig& config,
                  ExtractMethod checkpoint_method) {
    config.validate();

    // One accumulator per checkpoint plus one for the full run; checkpoint c
    // keeps samples from iterations (burn_in(c), c].
    struct Window {
        std::size_t upto;
        std::size_t from; // exclusive
        PolicyPosterior acc;
    };
    std::vector<Window> windows;
    for (std::size_t c : config.checkpoints)
        windows.push_back({c, config.burn_in(c), PolicyPosterior(spec)});
    windows.push_back(
        {config.iterations, config.burn_in(config.iterations), PolicyPosterior(spec)});

    LearnResult result;
    probprog::RandomSource rng(config.seed);
    probprog::Program model = build_model(spec, config.cost_scale);

    probprog::ChainObserver observer = [&](std::size_t it, const probprog::Trace& trace,
                                           bool) {
        const Policy& policy = std::any_cast<const Policy&>(trace.output());
        const double lj = trace.log_joint();
        for (Window& w : windows)
            if (it > w.from && it <= w.upto) w.acc.add_sample(policy, lj);
        for (Window& w : windows)
            if (w.upto == it && w.upto != config.iterations)
                result.checkpoint_policies.emplace(it,
                                                   extract_policy(w.acc, checkpoint_method));
    };

    probprog::run_chain(model, config.iterations, rng, observer);

    result.posterior = std::move(windows.back().acc);
    for (std::size_t c : config.checkpoints)
        if (c == config.iterations)
            result.checkpoint_policies.emplace(
                c, extract_policy(result.posterior, checkpoint_method));
    return result;
}

Policy extract_policy(const PolicyPosterior& posterior, ExtractMethod method) {
    if (posterior.sample_count() == 0)
        throw std::logic_error("extract_policy: empty posterior");
    if (method == ExtractMethod::MapSample) return posterior.best_policy();

    Policy policy;
    policy.node_probs.reserve(posterior.mean().size());
    for (const auto& mean : posterior.mean()) {
        double sum = 0.0;
        for (double m : mean) sum += m;
        std::vector<double> probs;
        probs.reserve(mean.size());
        for (double m : mean) probs.push_back(m / sum);
        policy.node_probs.push_back(std::move(probs));
    }
    return policy;
}

} // namespace ctp
