#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ctp/policy.hpp"
#include "ctp/spec.hpp"
#include "probprog/program.hpp"

namespace ctp {

// Policy places no probability mass on the admissible edges of the current
// node; cannot happen for Dirichlet-interior policies.
struct ZeroMassError : std::runtime_error {
    explicit ZeroMassError(const std::string& what) : std::runtime_error(what) {}
};

struct WalkResult {
    bool reached = false;
    double distance = 0.0;
    // (edge id, true for u->v direction) -> traversal count; each at most 1.
    std::map<std::pair<int, bool>, int> edge_direction_counts;
};

// Incident edges of v that are open and lead to an unvisited node, in
// canonical order. The instance is consulted only for edges at v, matching
// what a traveller standing there can observe.
std::vector<int> admissible_edges(const CtpSpec& spec, const Instance& instance,
                                  const std::set<int>& visited, int v);

// log( policy(v)[chosen] / sum over admissible of policy(v)[e] ); the prior
// recorded for a learning-mode selection.
double renormalized_selection_logprob(const CtpSpec& spec, const Policy& policy,
                                      int v, const std::vector<int>& admissible,
                                      int chosen);

// Depth-first traversal from s, selecting among admissible edges with the
// policy's renormalized probabilities, backtracking (and paying the edge
// weight again) when stuck. Selection draws land at addresses
// ("attempt", attempt, "step", i); forced moves with one admissible edge
// consume no randomness.
WalkResult stdfs(const CtpSpec& spec, const Instance& instance, const Policy& policy,
                 probprog::ChoiceSource& choices, std::int64_t attempt = 0);

// Convenience wrapper for evaluation-mode rollouts.
WalkResult stdfs(const CtpSpec& spec, const Instance& instance, const Policy& policy,
                 probprog::RandomSource& rng);

} // namespace ctp
