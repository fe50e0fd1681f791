#pragma once

#include <map>
#include <stdexcept>

#include "probprog/program.hpp"
#include "probprog/trace.hpp"

namespace fixtures {

// Builds a trace from a fixed latent assignment: every sample request must
// find its value in the script. The workhorse for trace-surgery tests.
class ScriptedSource final : public probprog::ChoiceSource {
public:
    explicit ScriptedSource(std::map<probprog::Address, probprog::Value> script)
        : script_(std::move(script)) {}

    probprog::Value sample(probprog::Address address,
                           const probprog::Distribution& dist) override {
        auto it = script_.find(address);
        if (it == script_.end())
            throw std::logic_error("scripted source: unscripted address " + address.str());
        double lp = probprog::log_density(dist, it->second);
        trace.add_entry({address, dist, it->second, lp});
        return it->second;
    }

    void observe(const probprog::Distribution& dist,
                 const probprog::Value& value) override {
        trace.add_observation({dist, value, probprog::log_density(dist, value)});
    }

    probprog::Trace trace;

private:
    std::map<probprog::Address, probprog::Value> script_;
};

// Replays values recorded in an existing trace; used to check that walks are
// reproducible from their recorded choices.
class TraceReplaySource final : public probprog::ChoiceSource {
public:
    explicit TraceReplaySource(const probprog::Trace& trace) : source_(trace) {}

    probprog::Value sample(probprog::Address address,
                           const probprog::Distribution&) override {
        const probprog::TraceEntry* entry = source_.find(address);
        if (!entry)
            throw std::logic_error("replay: address missing from trace " + address.str());
        return entry->value;
    }

    void observe(const probprog::Distribution&, const probprog::Value&) override {}

private:
    const probprog::Trace& source_;
};

} // namespace fixtures
