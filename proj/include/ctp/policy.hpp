#pragma once

#include <vector>

#include "ctp/spec.hpp"

namespace ctp {

// Per-node probability vector over the node's incident edges, coordinates in
// canonical (ascending edge-id) order, aligned with spec.nodes() order.
struct Policy {
    std::vector<std::vector<double>> node_probs;

    const std::vector<double>& at(const CtpSpec& spec, int node_id) const {
        return node_probs[spec.node_index(node_id)];
    }
};

// (1/deg, ..., 1/deg) at every node. Throws SpecError on an isolated node.
Policy uniform_policy(const CtpSpec& spec);

// Checks vector shapes, nonnegativity, and simplex sums within 1e-9.
void validate_policy(const CtpSpec& spec, const Policy& policy);

} // namespace ctp
