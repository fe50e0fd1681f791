#include "ctp/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace ctp {

namespace {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::size_t coordinate_of(const std::vector<int>& edges, int eid) {
    auto it = std::lower_bound(edges.begin(), edges.end(), eid);
    return static_cast<std::size_t>(it - edges.begin());
}

} // namespace

std::string render_policy(const CtpSpec& spec, const PosteriorFile& posterior,
                          const RenderStyle& style) {
    if (posterior.spec_hash != spec_hash(spec))
        throw FileFormatError("render: posterior spec_hash does not match spec");

    // Precision per edge; a variance floor keeps fully-converged coordinates
    // finite and on the top of the width range.
    constexpr double kVarianceFloor = 1e-12;
    std::vector<double> precision(spec.edge_count());
    std::vector<double> directedness(spec.edge_count());
    for (const Edge& e : spec.edges()) {
        std::size_t ui = spec.node_index(e.u);
        std::size_t vi = spec.node_index(e.v);
        std::size_t cu = coordinate_of(posterior.edge_ids[ui], e.id);
        std::size_t cv = coordinate_of(posterior.edge_ids[vi], e.id);
        double var_sum = posterior.variance[ui][cu] + posterior.variance[vi][cv];
        precision[spec.edge_index(e.id)] = 1.0 / std::max(var_sum, kVarianceFloor);

        double m_uv = posterior.mean[ui][cu];
        double m_vu = posterior.mean[vi][cv];
        double denom = m_uv + m_vu;
        directedness[spec.edge_index(e.id)] =
            denom > 0.0 ? std::abs(m_uv - m_vu) / denom : 0.0;
    }

    double p_min = *std::min_element(precision.begin(), precision.end());
    double p_max = *std::max_element(precision.begin(), precision.end());

    auto width_of = [&](double p) {
        if (p_max == p_min) return style.max_width;
        return style.min_width +
               (style.max_width - style.min_width) * (p - p_min) / (p_max - p_min);
    };
    auto color_of = [&](double d) {
        int blue = static_cast<int>(std::lround(255.0 * d));
        int green = 255 - blue;
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#00%02x%02x", green, blue);
        return std::string(buf);
    };

    std::ostringstream out;
    out << "graph policy {\n";
    out << "  node [shape=circle fixedsize=true width=0.25 fontsize=8];\n";

    std::vector<Node> nodes = spec.nodes();
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    for (const Node& n : nodes) {
        out << "  " << n.id << " [pos=\"" << format_double(n.x) << ','
            << format_double(n.y) << "!\"";
        if (n.id == spec.s() || n.id == spec.t()) out << " color=red penwidth=2";
        out << "];\n";
    }

    std::vector<Edge> edges = spec.edges();
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (const Edge& e : edges) {
        std::size_t ei = spec.edge_index(e.id);
        out << "  " << e.u << " -- " << e.v << " [penwidth="
            << format_double(width_of(precision[ei])) << " color=\""
            << color_of(directedness[ei]) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace ctp
