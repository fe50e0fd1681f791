#include "ctp/spec.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <utility>

namespace ctp {

CtpSpec::CtpSpec(std::vector<Node> nodes, std::vector<Edge> edges, int s, int t)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), s_(s), t_(t) {
    if (nodes_.empty()) throw SpecError("spec: empty node list");
    if (s_ == t_) throw SpecError("spec: s and t must differ");

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!node_index_.emplace(nodes_[i].id, i).second)
            throw SpecError("spec: duplicate node id " + std::to_string(nodes_[i].id));
    }
    if (!node_index_.count(s_)) throw SpecError("spec: s is not a node");
    if (!node_index_.count(t_)) throw SpecError("spec: t is not a node");

    incident_.resize(nodes_.size());
    std::set<std::pair<int, int>> seen_pairs;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (!edge_index_.emplace(e.id, i).second)
            throw SpecError("spec: duplicate edge id " + std::to_string(e.id));
        if (e.u == e.v)
            throw SpecError("spec: self-loop at node " + std::to_string(e.u));
        if (!node_index_.count(e.u) || !node_index_.count(e.v))
            throw SpecError("spec: edge " + std::to_string(e.id) +
                            " references a missing node");
        auto pair = std::minmax(e.u, e.v);
        if (!seen_pairs.emplace(pair.first, pair.second).second)
            throw SpecError("spec: duplicate edge between " + std::to_string(e.u) +
                            " and " + std::to_string(e.v));
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw SpecError("spec: edge " + std::to_string(e.id) +
                            " weight must be positive");
        if (!(e.p_open > 0.0 && e.p_open <= 1.0))
            throw SpecError("spec: edge " + std::to_string(e.id) +
                            " p_open must lie in (0,1]");
        incident_[node_index_[e.u]].push_back(e.id);
        incident_[node_index_[e.v]].push_back(e.id);
    }
    for (auto& list : incident_) std::sort(list.begin(), list.end());
}

std::size_t CtpSpec::node_index(int node_id) const {
    auto it = node_index_.find(node_id);
    if (it == node_index_.end())
        throw SpecError("spec: unknown node id " + std::to_string(node_id));
    return it->second;
}

std::size_t CtpSpec::edge_index(int edge_id) const {
    auto it = edge_index_.find(edge_id);
    if (it == edge_index_.end())
        throw SpecError("spec: unknown edge id " + std::to_string(edge_id));
    return it->second;
}

double total_weight(const CtpSpec& spec) {
    double sum = 0.0;
    for (const Edge& e : spec.edges()) sum += e.weight;
    return sum;
}

bool is_connected(const CtpSpec& spec, const Instance& instance) {
    std::vector<bool> visited(spec.node_count(), false);
    std::deque<int> frontier{spec.s()};
    visited[spec.node_index(spec.s())] = true;
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop_front();
        if (v == spec.t()) return true;
        for (int eid : spec.incident_edges(v)) {
            if (!instance.is_open(spec, eid)) continue;
            int far = spec.far_endpoint(spec.edge(eid), v);
            std::size_t fi = spec.node_index(far);
            if (!visited[fi]) {
                visited[fi] = true;
                frontier.push_back(far);
            }
        }
    }
    return false;
}

Instance draw_instance(const CtpSpec& spec, probprog::RandomSource& rng) {
    Instance inst;
    inst.open.reserve(spec.edge_count());
    for (const Edge& e : spec.edges())
        inst.open.push_back(rng.next_uniform() < e.p_open);
    return inst;
}

Instance draw_instance(const CtpSpec& spec, probprog::ChoiceSource& choices,
                       std::int64_t attempt) {
    Instance inst;
    inst.open.reserve(spec.edge_count());
    for (const Edge& e : spec.edges()) {
        probprog::Value state =
            choices.sample(probprog::Address::of("attempt", attempt, "edge", e.id),
                           probprog::Bernoulli(e.p_open));
        inst.open.push_back(std::get<std::int64_t>(state) == 1);
    }
    return inst;
}

} // namespace ctp
