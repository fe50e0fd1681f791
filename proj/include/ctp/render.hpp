#pragma once

#include <string>

#include "ctp/serialize.hpp"
#include "ctp/spec.hpp"

namespace ctp {

// Graphviz rendering of a learned policy: pen width follows policy precision
// (inverse of the variance summed over the edge's coordinate in both
// endpoint vectors, mapped affinely onto [0.5, 4.0]), color blends green
// (symmetric traversal) to blue (directed) by |m_uv - m_vu| / (m_uv + m_vu)
// over the posterior-mean selection probabilities.
struct RenderStyle {
    double min_width = 0.5;
    double max_width = 4.0;
};

// Emits an undirected DOT graph with positions pinned to node coordinates
// and the travel endpoints outlined in red. Throws FileFormatError when the
// posterior's spec hash does not match the spec.
std::string render_policy(const CtpSpec& spec, const PosteriorFile& posterior,
                          const RenderStyle& style = {});

} // namespace ctp
