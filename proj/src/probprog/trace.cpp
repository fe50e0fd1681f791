#include "probprog/trace.hpp"

#include <charconv>
#include <stdexcept>

namespace probprog {

void Trace::add_entry(TraceEntry entry) {
    auto [it, inserted] = index_.emplace(entry.address, entries_.size());
    if (!inserted)
        throw std::invalid_argument("Trace: duplicate address " + entry.address.str());
    entries_.push_back(std::move(entry));
}

void Trace::add_observation(Observation obs) {
    observations_.push_back(std::move(obs));
}

bool Trace::has_address(const Address& addr) const {
    return index_.count(addr) != 0;
}

const TraceEntry* Trace::find(const Address& addr) const {
    auto it = index_.find(addr);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

double Trace::log_joint() const {
    double total = latent_log_prior();
    for (const auto& obs : observations_) total += obs.log_lik;
    return total;
}

double Trace::latent_log_prior() const {
    double total = 0.0;
    for (const auto& e : entries_) total += e.log_prior;
    return total;
}

namespace {
std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}
} // namespace

void dump_trace(const Trace& trace, std::ostream& out) {
    for (const auto& e : trace.entries()) {
        out << e.address.str() << '\t' << describe(e.dist) << '\t'
            << describe(e.value) << '\t' << format_double(e.log_prior) << '\n';
    }
    for (const auto& o : trace.observations()) {
        out << "observe" << '\t' << describe(o.dist) << '\t' << describe(o.value)
            << '\t' << format_double(o.log_lik) << '\n';
    }
}

} // namespace probprog
