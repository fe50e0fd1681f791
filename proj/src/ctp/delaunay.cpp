#include "ctp/delaunay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>

namespace ctp {

namespace {

constexpr double kPredicateTol = 1e-12;

struct Triangle {
    int a, b, c;
};

// Positive when d lies strictly inside the circumcircle of counterclockwise
// (a, b, c); the classic 3x3 lifted determinant.
double incircle_det(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double ax = a.first - d.first, ay = a.second - d.second;
    const double bx = b.first - d.first, by = b.second - d.second;
    const double cx = c.first - d.first, cy = c.second - d.second;
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

double orient(const Point& a, const Point& b, const Point& c) {
    return (b.first - a.first) * (c.second - a.second) -
           (b.second - a.second) * (c.first - a.first);
}

} // namespace

std::vector<std::array<int, 3>> delaunay_triangles(const std::vector<Point>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::invalid_argument("delaunay: need at least 3 points");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double dx = points[i].first - points[j].first;
            double dy = points[i].second - points[j].second;
            if (std::abs(dx) <= kPredicateTol && std::abs(dy) <= kPredicateTol)
                throw DegeneracyError("delaunay: coincident points " +
                                      std::to_string(i) + " and " + std::to_string(j));
        }

    // Super-triangle far enough out that no data circumcircle reaches it.
    constexpr double kFar = 1e6;
    std::vector<Point> verts = points;
    verts.emplace_back(0.5 - 3.0 * kFar, 0.5 - kFar);
    verts.emplace_back(0.5 + 3.0 * kFar, 0.5 - kFar);
    verts.emplace_back(0.5, 0.5 + 3.0 * kFar);

    std::vector<Triangle> tris;
    tris.push_back({n, n + 1, n + 2});

    auto is_data = [n](int v) { return v < n; };

    auto ccw = [&](Triangle& t) {
        if (orient(verts[t.a], verts[t.b], verts[t.c]) < 0.0) std::swap(t.b, t.c);
    };

    for (int p = 0; p < n; ++p) {
        std::vector<std::size_t> bad;
        for (std::size_t ti = 0; ti < tris.size(); ++ti) {
            Triangle t = tris[ti];
            ccw(t);
            double det = incircle_det(verts[t.a], verts[t.b], verts[t.c], verts[p]);
            if (is_data(t.a) && is_data(t.b) && is_data(t.c) &&
                std::abs(det) < kPredicateTol)
                throw DegeneracyError("delaunay: incircle predicate vanished at point " +
                                      std::to_string(p));
            if (det > 0.0) bad.push_back(ti);
        }

        // Cavity boundary: directed edges of bad triangles whose mirror is
        // not itself in the cavity.
        std::map<std::pair<int, int>, int> edge_use;
        for (std::size_t ti : bad) {
            const Triangle& t = tris[ti];
            for (auto [u, v] : std::array<std::pair<int, int>, 3>{
                     {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}}) {
                edge_use[{std::min(u, v), std::max(u, v)}]++;
            }
        }

        std::set<std::size_t> bad_set(bad.begin(), bad.end());
        std::vector<Triangle> next;
        next.reserve(tris.size());
        for (std::size_t ti = 0; ti < tris.size(); ++ti)
            if (!bad_set.count(ti)) next.push_back(tris[ti]);

        for (const auto& [edge, uses] : edge_use) {
            if (uses != 1) continue;
            auto [u, v] = edge;
            if (is_data(u) && is_data(v) &&
                std::abs(orient(verts[u], verts[v], verts[p])) < kPredicateTol)
                throw DegeneracyError("delaunay: collinear points " + std::to_string(u) +
                                      ", " + std::to_string(v) + ", " + std::to_string(p));
            next.push_back({u, v, p});
        }
        tris = std::move(next);
    }

    std::vector<std::array<int, 3>> result;
    for (const Triangle& t : tris) {
        if (!is_data(t.a) || !is_data(t.b) || !is_data(t.c)) continue;
        std::array<int, 3> sorted{t.a, t.b, t.c};
        std::sort(sorted.begin(), sorted.end());
        result.push_back(sorted);
    }
    if (result.empty())
        throw DegeneracyError("delaunay: no interior triangle (collinear input?)");
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::pair<int, int>> delaunay(const std::vector<Point>& points) {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : delaunay_triangles(points)) {
        edges.emplace(t[0], t[1]);
        edges.emplace(t[1], t[2]);
        edges.emplace(t[0], t[2]);
    }
    return std::vector<std::pair<int, int>>(edges.begin(), edges.end());
}

} // namespace ctp
