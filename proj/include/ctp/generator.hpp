#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ctp/spec.hpp"

namespace ctp {

struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// How the travel endpoints of a generated spec are picked.
struct StRule {
    enum class Kind { MaxEuclidean, Random, Explicit };
    Kind kind = Kind::MaxEuclidean;
    int s = -1; // Explicit only
    int t = -1;

    static StRule max_euclidean() { return {Kind::MaxEuclidean, -1, -1}; }
    static StRule random() { return {Kind::Random, -1, -1}; }
    static StRule explicit_pair(int s, int t) { return {Kind::Explicit, s, t}; }
};

// Random problem: n i.i.d. uniform points on the unit square, Delaunay
// edges with Euclidean weights, one traversability probability everywhere.
// Degenerate point sets are resampled, up to 100 times. Warns on stderr when
// p_open is below the Delaunay bond-percolation threshold (~0.33).
CtpSpec generate_spec(std::size_t n, double p_open, std::uint64_t seed,
                      StRule st_rule = StRule::max_euclidean());

} // namespace ctp
