#pragma once

#include <any>
#include <functional>

#include "probprog/address.hpp"
#include "probprog/distribution.hpp"
#include "probprog/trace.hpp"

namespace probprog {

// What a probabilistic program talks to. Implementations decide where values
// come from: fresh prior draws, a trace under construction, or a replay.
class ChoiceSource {
public:
    virtual ~ChoiceSource() = default;

    virtual Value sample(Address address, const Distribution& dist) = 0;
    virtual void observe(const Distribution& dist, const Value& value) = 0;
};

// A model is a deterministic computation over its choice source: same
// answers to the same sample requests give the same control path and output.
using Program = std::function<std::any(ChoiceSource&)>;

// Prior sampler that records nothing; used when a model component runs
// outside inference (plain Monte Carlo rollouts).
class PriorChoiceSource final : public ChoiceSource {
public:
    explicit PriorChoiceSource(RandomSource& rng) : rng_(rng) {}

    Value sample(Address, const Distribution& dist) override {
        return probprog::sample(dist, rng_);
    }

    void observe(const Distribution&, const Value&) override {}

private:
    RandomSource& rng_;
};

} // namespace probprog
