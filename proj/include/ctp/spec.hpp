#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "probprog/program.hpp"
#include "probprog/random.hpp"

namespace ctp {

struct SpecError : std::invalid_argument {
    explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

struct Node {
    int id;
    double x;
    double y;
};

struct Edge {
    int id;
    int u;
    int v;
    double weight;
    double p_open;
};

// Immutable problem specification: an undirected weighted graph with
// per-edge traversability probabilities and the travel endpoints.
class CtpSpec {
public:
    CtpSpec(std::vector<Node> nodes, std::vector<Edge> edges, int s, int t);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int s() const { return s_; }
    int t() const { return t_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    std::size_t node_index(int node_id) const;
    std::size_t edge_index(int edge_id) const;
    const Node& node(int node_id) const { return nodes_[node_index(node_id)]; }
    const Edge& edge(int edge_id) const { return edges_[edge_index(edge_id)]; }

    // Incident edge ids in ascending edge-id order; the canonical order that
    // fixes the meaning of policy-vector coordinates.
    const std::vector<int>& incident_edges(int node_id) const {
        return incident_[node_index(node_id)];
    }
    std::size_t degree(int node_id) const { return incident_edges(node_id).size(); }

    int far_endpoint(const Edge& e, int from_node) const {
        return e.u == from_node ? e.v : e.u;
    }

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    int s_;
    int t_;
    std::unordered_map<int, std::size_t> node_index_;
    std::unordered_map<int, std::size_t> edge_index_;
    std::vector<std::vector<int>> incident_;
};

// One realization of edge states, aligned with spec.edges() order.
struct Instance {
    std::vector<bool> open;

    bool is_open(const CtpSpec& spec, int edge_id) const {
        return open[spec.edge_index(edge_id)];
    }
};

double total_weight(const CtpSpec& spec);

// True iff t is reachable from s over open edges (breadth-first search).
bool is_connected(const CtpSpec& spec, const Instance& instance);

// Each edge independently open with probability p_open(e).
Instance draw_instance(const CtpSpec& spec, probprog::RandomSource& rng);

// Trace-recording variant for use inside a model; edge states become latent
// choices at addresses ("attempt", attempt, "edge", edge-id).
Instance draw_instance(const CtpSpec& spec, probprog::ChoiceSource& choices,
                       std::int64_t attempt);

} // namespace ctp
