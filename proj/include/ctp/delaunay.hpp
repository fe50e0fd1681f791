#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctp {

// Point configuration too close to cocircular/collinear for the floating
// predicates to decide; callers respond by resampling the point set.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

using Point = std::pair<double, double>;

// Delaunay triangulation by incremental insertion into a bounding
// super-triangle (Bowyer-Watson). Throws DegeneracyError when an incircle
// or orientation predicate on input points vanishes within 1e-12.
std::vector<std::array<int, 3>> delaunay_triangles(const std::vector<Point>& points);

// The undirected edge set of the triangulation as index pairs (i, j) with
// i < j, sorted.
std::vector<std::pair<int, int>> delaunay(const std::vector<Point>& points);

} // namespace ctp
