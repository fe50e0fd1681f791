#include "ctp/policy.hpp"

#include <cmath>
#include <string>

namespace ctp {

Policy uniform_policy(const CtpSpec& spec) {
    Policy policy;
    policy.node_probs.reserve(spec.node_count());
    for (const Node& node : spec.nodes()) {
        std::size_t deg = spec.degree(node.id);
        if (deg == 0)
            throw SpecError("uniform_policy: isolated node " + std::to_string(node.id));
        policy.node_probs.emplace_back(deg, 1.0 / static_cast<double>(deg));
    }
    return policy;
}

void validate_policy(const CtpSpec& spec, const Policy& policy) {
    if (policy.node_probs.size() != spec.node_count())
        throw SpecError("policy: node count mismatch");
    for (const Node& node : spec.nodes()) {
        const auto& probs = policy.at(spec, node.id);
        if (probs.size() != spec.degree(node.id))
            throw SpecError("policy: vector length mismatch at node " +
                            std::to_string(node.id));
        double sum = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0))
                throw SpecError("policy: negative probability at node " +
                                std::to_string(node.id));
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw SpecError("policy: probabilities at node " + std::to_string(node.id) +
                            " do not sum to 1");
    }
}

} // namespace ctp
