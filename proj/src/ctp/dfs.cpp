#include "ctp/dfs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctp {

namespace {

double admissible_mass(const CtpSpec& spec, const Policy& policy, int v,
                       const std::vector<int>& admissible) {
    const auto& probs = policy.at(spec, v);
    const auto& incident = spec.incident_edges(v);
    double total = 0.0;
    for (int eid : admissible) {
        auto it = std::lower_bound(incident.begin(), incident.end(), eid);
        total += probs[static_cast<std::size_t>(it - incident.begin())];
    }
    return total;
}

double edge_prob(const CtpSpec& spec, const Policy& policy, int v, int eid) {
    const auto& incident = spec.incident_edges(v);
    auto it = std::lower_bound(incident.begin(), incident.end(), eid);
    return policy.at(spec, v)[static_cast<std::size_t>(it - incident.begin())];
}

} // namespace

std::vector<int> admissible_edges(const CtpSpec& spec, const Instance& instance,
                                  const std::set<int>& visited, int v) {
    std::vector<int> result;
    for (int eid : spec.incident_edges(v)) {
        if (!instance.is_open(spec, eid)) continue;
        if (visited.count(spec.far_endpoint(spec.edge(eid), v))) continue;
        result.push_back(eid);
    }
    return result;
}

double renormalized_selection_logprob(const CtpSpec& spec, const Policy& policy,
                                      int v, const std::vector<int>& admissible,
                                      int chosen) {
    double total = admissible_mass(spec, policy, v, admissible);
    if (total <= 1e-12)
        throw ZeroMassError("policy mass vanishes on admissible edges of node " +
                            std::to_string(v));
    return std::log(edge_prob(spec, policy, v, chosen) / total);
}

WalkResult stdfs(const CtpSpec& spec, const Instance& instance, const Policy& policy,
                 probprog::ChoiceSource& choices, std::int64_t attempt) {
    WalkResult result;
    std::set<int> visited{spec.s()};
    std::vector<std::pair<int, int>> stack; // (parent node, edge entered through)
    int v = spec.s();
    std::int64_t step = 0;

    auto traverse = [&](int eid, int from) {
        const Edge& e = spec.edge(eid);
        result.distance += e.weight;
        int& count = result.edge_direction_counts[{eid, e.u == from}];
        ++count;
    };

    while (true) {
        std::vector<int> admissible = admissible_edges(spec, instance, visited, v);
        if (admissible.empty()) {
            if (stack.empty()) break; // exhausted the reachable component
            auto [parent, eid] = stack.back();
            stack.pop_back();
            traverse(eid, v);
            v = parent;
            continue;
        }

        double total = admissible_mass(spec, policy, v, admissible);
        if (total <= 1e-12)
            throw ZeroMassError("policy mass vanishes on admissible edges of node " +
                                std::to_string(v));

        int chosen;
        if (admissible.size() == 1) {
            chosen = admissible[0]; // forced move, no randomness
        } else {
            std::vector<double> weights;
            weights.reserve(admissible.size());
            for (int eid : admissible)
                weights.push_back(edge_prob(spec, policy, v, eid) / total);
            probprog::Value pick =
                choices.sample(probprog::Address::of("attempt", attempt, "step", step++),
                               probprog::Categorical::from_unnormalized(std::move(weights)));
            chosen = admissible[static_cast<std::size_t>(std::get<std::int64_t>(pick))];
        }

        int far = spec.far_endpoint(spec.edge(chosen), v);
        traverse(chosen, v);
        stack.emplace_back(v, chosen);
        visited.insert(far);
        v = far;
        if (v == spec.t()) {
            result.reached = true;
            break;
        }
    }
    return result;
}

WalkResult stdfs(const CtpSpec& spec, const Instance& instance, const Policy& policy,
                 probprog::RandomSource& rng) {
    probprog::PriorChoiceSource choices(rng);
    return stdfs(spec, instance, policy, choices);
}

} // namespace ctp
