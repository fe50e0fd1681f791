#pragma once

#include <any>
#include <cstddef>
#include <map>
#include <ostream>
#include <vector>

#include "probprog/address.hpp"
#include "probprog/distribution.hpp"

namespace probprog {

// One latent random choice: where it was made, from what, and its value's
// log prior density.
struct TraceEntry {
    Address address;
    Distribution dist;
    Value value;
    double log_prior;
};

// One conditioning statement and the log likelihood it contributed.
struct Observation {
    Distribution dist;
    Value value;
    double log_lik;
};

// Record of one program execution: latent choices in execution order,
// observations, and the program output. Immutable once built.
class Trace {
public:
    Trace() = default;

    // Throws std::invalid_argument on a duplicate address.
    void add_entry(TraceEntry entry);
    void add_observation(Observation obs);
    void set_output(std::any output) { output_ = std::move(output); }

    const std::vector<TraceEntry>& entries() const { return entries_; }
    const std::vector<Observation>& observations() const { return observations_; }
    const std::any& output() const { return output_; }

    bool has_address(const Address& addr) const;
    const TraceEntry* find(const Address& addr) const;

    // Sum of all entry log priors plus observation log likelihoods.
    double log_joint() const;
    double latent_log_prior() const;

    std::size_t size() const { return entries_.size(); }

private:
    std::vector<TraceEntry> entries_;
    std::map<Address, std::size_t> index_;
    std::vector<Observation> observations_;
    std::any output_;
};

// Debug dump, one line per entry: address TAB distribution TAB value TAB
// log_prior. Observations follow with the address column set to "observe".
void dump_trace(const Trace& trace, std::ostream& out);

} // namespace probprog
