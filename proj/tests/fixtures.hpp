#pragma once

#include "ctp/spec.hpp"

namespace fixtures {

// Diamond graph: s can reach t through a (cost 2) or through b (cost 11).
//
//        a
//   1  /   \  1
//     s     t
//   1  \   / 10
//        b
inline ctp::CtpSpec diamond(double p_open = 1.0) {
    std::vector<ctp::Node> nodes{
        {0, 0.0, 0.5}, {1, 0.5, 1.0}, {2, 0.5, 0.0}, {3, 1.0, 0.5}};
    std::vector<ctp::Edge> edges{{0, 0, 1, 1.0, p_open},
                                 {1, 0, 2, 1.0, p_open},
                                 {2, 1, 3, 1.0, p_open},
                                 {3, 2, 3, 10.0, p_open}};
    return ctp::CtpSpec(std::move(nodes), std::move(edges), 0, 3);
}

inline ctp::CtpSpec single_edge(double weight = 3.0, double p_open = 1.0) {
    std::vector<ctp::Node> nodes{{0, 0.0, 0.0}, {1, 1.0, 0.0}};
    std::vector<ctp::Edge> edges{{0, 0, 1, weight, p_open}};
    return ctp::CtpSpec(std::move(nodes), std::move(edges), 0, 1);
}

// Path s - a - t; the a-t edge may be blocked to force a backtrack.
inline ctp::CtpSpec path3(double p_open = 1.0) {
    std::vector<ctp::Node> nodes{{0, 0.0, 0.0}, {1, 0.5, 0.0}, {2, 1.0, 0.0}};
    std::vector<ctp::Edge> edges{{0, 0, 1, 0.5, p_open}, {1, 1, 2, 0.5, p_open}};
    return ctp::CtpSpec(std::move(nodes), std::move(edges), 0, 2);
}

} // namespace fixtures
