#include "ctp/generator.hpp"

#include <cmath>
#include <iostream>
#include <vector>

#include "ctp/delaunay.hpp"

namespace ctp {

CtpSpec generate_spec(std::size_t n, double p_open, std::uint64_t seed,
                      StRule st_rule) {
    if (n < 3) throw std::invalid_argument("generate_spec: need n >= 3 nodes");
    if (!(p_open > 0.0 && p_open <= 1.0))
        throw std::invalid_argument("generate_spec: p_open must lie in (0,1]");
    if (p_open < 0.35)
        std::cerr << "warning: p_open=" << p_open
                  << " is below the Delaunay percolation threshold (~0.33); "
                     "instances will be disconnected with high probability\n";

    probprog::RandomSource rng(seed);

    std::vector<Point> points;
    std::vector<std::pair<int, int>> tri_edges;
    bool triangulated = false;
    for (int attempt = 0; attempt < 100 && !triangulated; ++attempt) {
        points.clear();
        points.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            double x = rng.next_uniform();
            double y = rng.next_uniform();
            points.emplace_back(x, y);
        }
        try {
            tri_edges = delaunay(points);
            triangulated = true;
        } catch (const DegeneracyError&) {
            // zero-probability event under uniform sampling; resample
        }
    }
    if (!triangulated)
        throw GenerationError("generate_spec: degenerate point sets in 100 attempts");

    std::vector<Node> nodes;
    nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes.push_back({static_cast<int>(i), points[i].first, points[i].second});

    std::vector<Edge> edges;
    edges.reserve(tri_edges.size());
    for (std::size_t i = 0; i < tri_edges.size(); ++i) {
        auto [u, v] = tri_edges[i];
        double dx = points[u].first - points[v].first;
        double dy = points[u].second - points[v].second;
        edges.push_back({static_cast<int>(i), u, v, std::hypot(dx, dy), p_open});
    }

    int s = -1, t = -1;
    switch (st_rule.kind) {
    case StRule::Kind::MaxEuclidean: {
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = points[i].first - points[j].first;
                double dy = points[i].second - points[j].second;
                double d2 = dx * dx + dy * dy;
                if (d2 > best) {
                    best = d2;
                    s = static_cast<int>(i);
                    t = static_cast<int>(j);
                }
            }
        break;
    }
    case StRule::Kind::Random: {
        s = static_cast<int>(rng.next_uniform() * static_cast<double>(n));
        do {
            t = static_cast<int>(rng.next_uniform() * static_cast<double>(n));
        } while (t == s);
        break;
    }
    case StRule::Kind::Explicit:
        s = st_rule.s;
        t = st_rule.t;
        break;
    }

    return CtpSpec(std::move(nodes), std::move(edges), s, t);
}

} // namespace ctp
