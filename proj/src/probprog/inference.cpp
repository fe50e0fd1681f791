#include "probprog/inference.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace probprog {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class ForwardContext final : public ChoiceSource {
public:
    ForwardContext(RandomSource& rng, std::size_t step_budget)
        : rng_(rng), step_budget_(step_budget) {}

    Value sample(Address address, const Distribution& dist) override {
        if (++steps_ > step_budget_)
            throw RunawayProgramError("forward execution exceeded step budget");
        Value value = probprog::sample(dist, rng_);
        double lp = log_density(dist, value);
        trace.add_entry({std::move(address), dist, value, lp});
        return value;
    }

    void observe(const Distribution& dist, const Value& value) override {
        trace.add_observation({dist, value, log_density(dist, value)});
    }

    Trace trace;

private:
    RandomSource& rng_;
    std::size_t step_budget_;
    std::size_t steps_ = 0;
};

// Re-execution against an existing trace. Values at matching addresses are
// reused and rescored; the proposal site takes the proposed value; everything
// else is drawn fresh from the prior.
class ReplayContext final : public ChoiceSource {
public:
    ReplayContext(const Trace& old_trace, const Address& proposal_address,
                  Value proposal_value, RandomSource& rng, std::size_t step_budget)
        : old_(old_trace), proposal_address_(proposal_address),
          proposal_value_(std::move(proposal_value)), rng_(rng),
          step_budget_(step_budget) {}

    Value sample(Address address, const Distribution& dist) override {
        if (++steps_ > step_budget_)
            throw RunawayProgramError("re-execution exceeded step budget");

        if (address == proposal_address_) {
            // Control flow upstream of the proposal site is unchanged, so the
            // distribution here matches the one the value was proposed from;
            // its proposal and prior terms cancel in the acceptance ratio.
            double lp = log_density(dist, proposal_value_);
            reused_.insert(address);
            trace.add_entry({std::move(address), dist, proposal_value_, lp});
            return proposal_value_;
        }

        if (const TraceEntry* old_entry = old_.find(address)) {
            double lp = log_density(dist, old_entry->value);
            if (lp > kNegInf) {
                reused_.insert(address);
                trace.add_entry({std::move(address), dist, old_entry->value, lp});
                return old_entry->value;
            }
            // Old value left the support; fall through to a fresh draw and
            // leave the old entry to be counted as stale.
        }

        Value value = probprog::sample(dist, rng_);
        double lp = log_density(dist, value);
        fresh_log_prior += lp;
        Value result = value;
        trace.add_entry({std::move(address), dist, std::move(value), lp});
        return result;
    }

    void observe(const Distribution& dist, const Value& value) override {
        trace.add_observation({dist, value, log_density(dist, value)});
    }

    // Log prior mass of old entries whose values were not carried into the
    // new trace.
    double stale_log_prior() const {
        double total = 0.0;
        for (const auto& e : old_.entries())
            if (reused_.count(e.address) == 0) total += e.log_prior;
        return total;
    }

    Trace trace;
    double fresh_log_prior = 0.0; // proposal site excluded

private:
    const Trace& old_;
    const Address& proposal_address_;
    Value proposal_value_;
    RandomSource& rng_;
    std::size_t step_budget_;
    std::size_t steps_ = 0;
    std::set<Address> reused_;
};

} // namespace

Trace run_forward(const Program& program, RandomSource& rng,
                  std::size_t step_budget) {
    ForwardContext ctx(rng, step_budget);
    ctx.trace.set_output(program(ctx));
    return std::move(ctx.trace);
}

MhResult mh_step(const Program& program, const Trace& current, RandomSource& rng,
                 std::size_t step_budget) {
    const std::size_t n_old = current.size();
    if (n_old == 0)
        throw std::invalid_argument("mh_step: trace has no latent entries to propose on");

    std::size_t site = static_cast<std::size_t>(rng.next_uniform() * static_cast<double>(n_old));
    if (site >= n_old) site = n_old - 1;
    const TraceEntry& picked = current.entries()[site];
    Value proposal = probprog::sample(picked.dist, rng);

    ReplayContext ctx(current, picked.address, std::move(proposal), rng, step_budget);
    ctx.trace.set_output(program(ctx));

    const double new_joint = ctx.trace.log_joint();
    const double old_joint = current.log_joint();
    const std::size_t n_new = ctx.trace.size();

    double delta;
    if (new_joint == kNegInf) {
        delta = kNegInf; // zero-likelihood proposal: deterministic reject
    } else {
        // The prior-resample kernel density at the proposal site cancels the
        // site's prior factor in each joint (the program re-runs through an
        // identical prefix, so the site's distribution is the same in both
        // traces); score the joints with that site excluded.
        const TraceEntry* new_site = ctx.trace.find(picked.address);
        const double new_site_lp = new_site ? new_site->log_prior : 0.0;
        delta = (new_joint - new_site_lp) - (old_joint - picked.log_prior)
              + std::log(static_cast<double>(n_old))
              - std::log(static_cast<double>(n_new))
              + ctx.stale_log_prior() - ctx.fresh_log_prior;
    }

    const double u = rng.next_uniform();
    const bool accepted = delta >= 0.0 || std::log(u) < delta;
    if (accepted) return {std::move(ctx.trace), true};
    return {current, false};
}

Trace run_chain(const Program& program, std::size_t iterations, RandomSource& rng,
                const ChainObserver& observer, std::size_t step_budget) {
    if (iterations < 1)
        throw std::invalid_argument("run_chain: iterations must be >= 1");

    constexpr std::size_t kInitAttempts = 10'000;
    Trace current;
    bool initialized = false;
    for (std::size_t attempt = 0; attempt < kInitAttempts; ++attempt) {
        current = run_forward(program, rng, step_budget);
        double lj = current.log_joint();
        if (std::isfinite(lj)) {
            initialized = true;
            break;
        }
    }
    if (!initialized)
        throw ModelInfeasibleError(
            "run_chain: no finite-probability trace in 10000 initialization attempts");

    for (std::size_t it = 1; it <= iterations; ++it) {
        MhResult result = mh_step(program, current, rng, step_budget);
        current = std::move(result.trace);
        if (observer) observer(it, current, result.accepted);
    }
    return current;
}

} // namespace probprog
